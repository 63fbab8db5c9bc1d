"""theta2: command-line surface for the genus-two theta-constant engine.

Subcommands: expand, verify, dims, reps, certify.  Exit status is 0 when
everything passes, 1 when an unconditional identity fails or an exact computation
breaks down (division by zero, a rank above the claimed dimension) and 2 on usage
errors (unknown names, out-of-range arguments).
"""
import argparse
import json
import logging
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import jsonschema
import pandas as pd

# Try to load env vars
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass

from arith import DEFAULT_ORDER, order_to_cutoff
from registry import UnknownFormError, get_form, is_cusp

log = logging.getLogger("theta2")

SCHEMA_PATH = Path(__file__).parent / "report_schema.json"

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def parse_order(text):
    """Truncation order from a flag or THETA2_ORDER ('6', '5/2')."""
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"order has a zero denominator: {text}") from None


@dataclass
class RunConfig:
    order: Fraction = Fraction(DEFAULT_ORDER)
    suite: str = ""
    output: str = "text"
    cache_dir: Path = field(default_factory=lambda: Path("data"))
    out_dir: Path = field(default_factory=lambda: Path("reports"))
    threads: int = 1
    use_cache: bool = True

    def __post_init__(self):
        self.order = Fraction(self.order)
        if self.order < 1:
            raise ValueError(f"order must be at least 1: {self.order}")
        if self.threads < 1:
            raise ValueError(f"threads must be at least 1: {self.threads}")
        order_to_cutoff(self.order)
        if self.output not in ("text", "json"):
            raise ValueError(f"unknown output format: {self.output}")

    @classmethod
    def from_args(cls, args):
        """Environment values first, command-line flags on top."""
        order = getattr(args, "order", None)
        if order is None:
            order = parse_order(os.getenv("THETA2_ORDER", DEFAULT_ORDER))
        threads = args.threads if getattr(args, "threads", None) is not None else int(os.getenv("THETA2_THREADS", 1))
        return cls(
            order=Fraction(order),
            suite=getattr(args, "suite", "") or "",
            output="json" if getattr(args, "json", False) else "text",
            cache_dir=Path(args.cache_dir or os.getenv("THETA2_CACHE", "data")),
            out_dir=Path(args.out or os.getenv("THETA2_OUT", "reports")),
            threads=threads,
            use_cache=not getattr(args, "no_cache", False),
        )


# ==========================================
# OUTPUT HELPERS
# ==========================================

def format_rows(series):
    """Lines '[a, c]  sum of coefficient * r^b' in the quarter-exponent convention."""
    lines = []
    for (a, c), row in sorted(series.laurent_rows().items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0])):
        terms = []
        for b, value in sorted(row.items()):
            power = Fraction(b, 2)
            terms.append(f"({value})" + ("" if power == 0 else f" r^{power}"))
        lines.append(f"[{Fraction(a, 4)}, {Fraction(c, 4)}]  " + " + ".join(terms))
    return lines


def expansion_dict(name, expansion, order):
    return {
        "name": name,
        "weight": [expansion.j, str(expansion.k)],
        "pi_power": expansion.p,
        "group": expansion.group,
        "order": str(Fraction(order)),
        "components": expansion.to_records(),
    }


def print_report(report):
    df = pd.DataFrame(report["records"])
    if df.empty:
        print(f"{report['suite']}: no records")
        return
    cols = [c for c in ("id", "status", "conditional", "anchor") if c in df.columns]
    with pd.option_context("display.max_rows", None, "display.max_colwidth", 60, "display.width", 160):
        print(df[cols].to_string(index=False))
    counts = df["status"].value_counts().to_dict()
    summary = ", ".join(f"{n} {s}" for s, n in sorted(counts.items()))
    flag = "  (low confidence: order below 4)" if report["low_confidence"] else ""
    print(f"\n{report['suite']} at order {report['order']}: {summary} in {report['wall_time']}s{flag}")


def validate_report(report):
    schema = json.loads(SCHEMA_PATH.read_text())
    jsonschema.validate(report, schema)


def write_report(report, out_dir):
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{report['suite']}_report.json"
    path.write_text(json.dumps(report, indent=2, default=str))
    log.info("report written to %s", path)
    return path


def export_excel(tables, path):
    """One sheet per table."""
    with pd.ExcelWriter(path, engine="openpyxl") as writer:
        for sheet, df in tables.items():
            # Excel forbids []:*?/\ in sheet titles
            title = re.sub(r"[\[\]:*?/\\]", "", sheet)[:31]
            df.to_excel(writer, sheet_name=title, index=False)
    log.info("tables written to %s", path)


# ==========================================
# COMMANDS
# ==========================================

def cmd_expand(args, config):
    from database import cached_expansion, init_db
    from formalg import evaluate

    expr = get_form(args.name)
    if config.use_cache:
        init_db(config.cache_dir)
        expansion = cached_expansion(args.name, expr, config.order, config.cache_dir)
    else:
        expansion = evaluate(expr, order=config.order)
    if config.output == "json":
        print(json.dumps(expansion_dict(args.name, expansion, config.order), indent=2))
        return EXIT_OK
    cusp = "  cusp" if is_cusp(args.name) else ""
    print(f"{args.name}  weight ({expansion.j}, {expansion.k})  (pi i)^{expansion.p}  "
          f"{expansion.group}  order {config.order}{cusp}")
    for index, comp in enumerate(expansion.components):
        if expansion.j:
            print(f"-- component {index}")
        for line in format_rows(comp):
            print(line)
        print("records:")
        for record in comp.to_records():
            print(f"  ({record['A']}, {record['B']}, {record['C']})  " + " ".join(record["coeff"]))
    return EXIT_OK


def _run_suites(names, config, certify):
    from suites import failed, get_suite

    status = EXIT_OK
    for name in names:
        suite = get_suite(name, config.order, config.threads, config.cache_dir, config.use_cache, certify=certify)
        report = suite.run()
        validate_report(report)
        write_report(report, config.out_dir)
        if config.output == "json":
            print(json.dumps(report, indent=2, default=str))
        else:
            print_report(report)
        if failed(report):
            status = EXIT_FAILED
    return status


def cmd_verify(args, config):
    from suites import SUITES_MAP

    if args.suite not in SUITES_MAP:
        raise ValueError(f"unknown suite: {args.suite} (known: {', '.join(SUITES_MAP)})")
    return _run_suites([args.suite], config, certify=False)


def cmd_certify(args, config):
    from suites import CERTIFY_MAP

    if args.module != "all" and args.module not in CERTIFY_MAP:
        raise ValueError(f"unknown module: {args.module} (known: {', '.join(CERTIFY_MAP)}, all)")
    names = list(CERTIFY_MAP) if args.module == "all" else [args.module]
    return _run_suites(names, config, certify=True)


def dims_table(j, ks, group="Gamma[2]"):
    from reptheory import GENFUNS, dim_formula, gamma1_dim

    rows = []
    for k in ks:
        row = {"k": k}
        if group == "Gamma[2]":
            for kind in ("M", "S"):
                try:
                    row[f"dim_{kind}"] = dim_formula(j, k, kind)
                except ValueError:
                    row[f"dim_{kind}"] = None
            if j == 0 and k % 2 == 0:
                for key, gf in GENFUNS.items():
                    if key.startswith("mult_"):
                        row[key[len("mult_"):]] = int(gf.coeffs(k)[k])
        elif group == "Gamma1[2]":
            row["dim_M"] = gamma1_dim(j, k)
        else:
            raise ValueError(f"no dimension data for {group}")
        rows.append(row)
    return pd.DataFrame(rows)


def cmd_dims(args, config):
    start = args.start if args.start is not None else (0 if args.j == 0 else 3)
    ks = [k for k in range(start, args.upto + 1)
          if not (args.even and k % 2) and not (args.odd and k % 2 == 0)]
    df = dims_table(args.j, ks, args.group)
    print(df.to_string(index=False))
    if args.excel:
        export_excel({f"j{args.j} {args.group}": df}, args.excel)
    return EXIT_OK


def reps_table(target, order):
    from reference_tables import MULTIPLICITY_TABLES
    from reptheory import S6_LABELS
    from suites import SPACES, space_representation

    if target in MULTIPLICITY_TABLES:
        rows = [{"k": k, **dict(zip(S6_LABELS, row))} for k, row in sorted(MULTIPLICITY_TABLES[target].items())]
        return pd.DataFrame(rows), None
    if target not in SPACES:
        raise ValueError(f"unknown space: {target} (known: {', '.join(list(SPACES) + list(MULTIPLICITY_TABLES))})")
    m = space_representation(target, order)
    df = pd.DataFrame([{"irreducible": name, "multiplicity": n} for name, n in m.counts.items() if n])
    return df, str(m)


def cmd_reps(args, config):
    df, summary = reps_table(args.space, config.order)
    if summary is not None:
        print(f"{args.space} = {summary}")
    print(df.to_string(index=False))
    if args.excel:
        export_excel({args.space: df}, args.excel)
    return EXIT_OK


# ==========================================
# ENTRY POINT
# ==========================================

def build_parser():
    parser = argparse.ArgumentParser(prog="theta2", description="Exact Fourier expansions of genus-two level-two forms")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    parser.add_argument("--cache-dir", help="expansion cache directory (THETA2_CACHE)")
    parser.add_argument("--out", help="report directory (THETA2_OUT)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="print the expansion of a named form")
    p.add_argument("name")
    p.add_argument("--order", type=parse_order)
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("suite")
    p.add_argument("--order", type=parse_order)
    p.add_argument("--threads", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="generation certificates of a module")
    p.add_argument("module")
    p.add_argument("--order", type=parse_order)
    p.add_argument("--threads", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("dims", help="dimension table")
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--from", dest="start", type=int)
    p.add_argument("--upto", type=int, default=12)
    parity = p.add_mutually_exclusive_group()
    parity.add_argument("--even", action="store_true")
    parity.add_argument("--odd", action="store_true")
    p.add_argument("--group", default="Gamma[2]", choices=["Gamma[2]", "Gamma1[2]"])
    p.add_argument("--excel")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("reps", help="S6 decomposition of a space or a printed multiplicity table")
    p.add_argument("space")
    p.add_argument("--order", type=parse_order)
    p.add_argument("--excel")
    p.set_defaults(func=cmd_reps)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        config = RunConfig.from_args(args)
        return args.func(args, config)
    except UnknownFormError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as e:
        # a division by zero or a failed certificate while computing, not a bad argument
        log.error("%s: %s", type(e).__name__, e)
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())

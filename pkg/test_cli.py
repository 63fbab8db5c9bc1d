import json
import sys
from pathlib import Path

import jsonschema
import pandas as pd
import pytest

# Add current directory to path
sys.path.append(str(Path(__file__).parent))

import main
from main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, RunConfig

SCHEMA = json.loads((Path(__file__).parent / "report_schema.json").read_text())


def test_unknown_form_is_a_usage_error(capsys):
    assert main.main(["expand", "chi55", "--no-cache"]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "unknown form: chi55" in err
    assert "chi5" in err


def test_bad_order_is_a_usage_error(capsys):
    assert main.main(["expand", "x1", "--order", "0", "--no-cache"]) == EXIT_USAGE
    assert "order must be at least 1" in capsys.readouterr().err
    assert main.main(["expand", "x1", "--order", "4/3", "--no-cache"]) == EXIT_USAGE


def test_unknown_suite_and_module(capsys):
    assert main.main(["verify", "nope", "--order", "1"]) == EXIT_USAGE
    assert "unknown suite" in capsys.readouterr().err
    assert main.main(["certify", "nope", "--order", "1"]) == EXIT_USAGE
    assert "unknown module" in capsys.readouterr().err


def test_expand_json(capsys, tmp_path):
    code = main.main(["--cache-dir", str(tmp_path), "expand", "x1", "--order", "1", "--json", "--no-cache"])
    assert code == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["name"] == "x1"
    assert data["weight"] == [0, "2"]
    assert data["order"] == "1"
    assert len(data["components"]) == 1


def test_expand_text_uses_the_cache(capsys, tmp_path):
    assert main.main(["--cache-dir", str(tmp_path), "expand", "x1", "--order", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("x1  weight (0, 2)")
    assert "[0, 0]  (1)" in out
    assert "  (0, 0, 0)  1/1 0/1 0/1 0/1" in out
    assert (tmp_path / "expansions.db").exists()


def test_dims_table(capsys, tmp_path):
    target = tmp_path / "dims.xlsx"
    assert main.main(["dims", "--j", "0", "--even", "--upto", "8", "--excel", str(target)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "dim_M" in out
    assert "69" in out
    df = pd.read_excel(target)
    assert list(df["k"]) == [0, 2, 4, 6, 8]
    assert list(df["dim_M"])[1:] == [5, 15, 35, 69]


def test_reps_of_a_printed_table(capsys):
    assert main.main(["reps", "M0"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "s[2^3]" in out


def test_verify_writes_a_valid_report(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("THETA2_OUT", str(tmp_path / "reports"))
    code = main.main(["verify", "dims", "--order", "1", "--no-cache"])
    assert code in (0, 1)
    path = tmp_path / "reports" / "dims_report.json"
    report = json.loads(path.read_text())
    jsonschema.validate(report, SCHEMA)
    assert report["suite"] == "dims"
    assert report["order"] == "1"
    assert "dims at order 1" in capsys.readouterr().out


def test_environment_defaults(monkeypatch):
    monkeypatch.setenv("THETA2_ORDER", "3")
    monkeypatch.setenv("THETA2_THREADS", "2")
    args = main.build_parser().parse_args(["verify", "rings"])
    config = RunConfig.from_args(args)
    assert config.order == 3
    assert config.threads == 2
    args = main.build_parser().parse_args(["verify", "rings", "--order", "5/2"])
    assert RunConfig.from_args(args).order == main.Fraction(5, 2)


def test_zero_denominator_order_is_a_usage_error(monkeypatch):
    with pytest.raises(SystemExit) as exit_info:
        main.main(["expand", "x1", "--order", "1/0", "--no-cache"])
    assert exit_info.value.code == EXIT_USAGE
    monkeypatch.setenv("THETA2_ORDER", "3/0")
    assert main.main(["verify", "dims"]) == EXIT_USAGE


def test_division_by_zero_while_computing_exits_1(capsys, monkeypatch):
    import formalg

    def broken(expr, order=None, cutoff=None):
        raise ZeroDivisionError("division by zero in Q(zeta_8)")

    monkeypatch.setattr(formalg, "evaluate", broken)
    assert main.main(["expand", "x1", "--order", "1", "--no-cache"]) == EXIT_FAILED
    assert "ZeroDivisionError" in capsys.readouterr().err

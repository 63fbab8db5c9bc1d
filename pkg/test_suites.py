import json
import sys
from pathlib import Path

import jsonschema
import pytest

# Add current directory to path
sys.path.append(str(Path(__file__).parent))

from formalg import add, memo_size
from registry import x
from suites import (CERTIFY_MAP, PAIRS, SUITES_MAP, Check, DimsSuite, GradientsSuite, Level1Suite, PropertiesSuite,
                    Sigma2Certificates, VerificationSuite, _certificate, _relation_type, _single_relation, failed, fact,
                    get_suite, identity, zero)

SCHEMA = json.loads((Path(__file__).parent / "report_schema.json").read_text())


class ToySuite(VerificationSuite):
    name = "toy"

    def checks(self):
        return [
            Check("linear_relation", "theta relations", identity(lambda: x(7), lambda: add(x(2), -x(3), x(5)))),
            Check("wrong_relation", "theta relations", identity(lambda: x(7), lambda: x(2))),
            Check("vanishing", "theta relations", zero(lambda: x(1) - x(4) - x(6) - x(7))),
            Check("raises", "errors", fact(lambda: 1 / 0)),
            Check("open", "unknown image", lambda order: ("unverified", "no formula"), conditional=True),
        ]


def _by_id(report):
    return {r["id"]: r for r in report["records"]}


def test_record_statuses():
    report = ToySuite(order=1).run()
    jsonschema.validate(report, SCHEMA)
    records = _by_id(report)
    assert records["linear_relation"]["status"] == "pass"
    assert records["vanishing"]["status"] == "pass"
    assert records["wrong_relation"]["status"] == "fail"
    assert records["wrong_relation"]["discrepancy"]["component"] == 0
    assert records["raises"]["status"] == "error"
    assert records["raises"]["discrepancy"].startswith("ZeroDivisionError")
    assert records["open"]["status"] == "unverified"
    assert records["open"]["detail"] == "no formula"
    assert report["low_confidence"] is True
    assert failed(report)


def test_threads_keep_item_order():
    serial = ToySuite(order=1).run()
    pooled = ToySuite(order=1, threads=3).run()
    assert [r["id"] for r in pooled["records"]] == [r["id"] for r in serial["records"]]
    assert [r["status"] for r in pooled["records"]] == [r["status"] for r in serial["records"]]


def test_conditional_records_do_not_fail_a_report():
    report = {"records": [{"status": "fail", "conditional": True}, {"status": "inconclusive", "conditional": False}]}
    assert not failed(report)


def test_invalid_parameters():
    with pytest.raises(ValueError):
        ToySuite(order=0)
    with pytest.raises(ValueError):
        ToySuite(order=1, threads=0)
    with pytest.raises(ValueError, match="unknown suite"):
        get_suite("nope")
    with pytest.raises(ValueError, match="unknown suite"):
        get_suite("dims", certify=True)


def test_registries():
    assert set(CERTIFY_MAP) == {"sigma2", "m2", "m4", "gamma1"}
    assert {"rings", "brackets", "gradients", "fricke", "wedges", "sigma2", "m2", "m4", "gamma1", "level1",
            "dims", "reps", "properties", "all"} == set(SUITES_MAP)
    assert isinstance(get_suite("rings", order=1), VerificationSuite)


def test_all_suite_prefixes_ids():
    ids = [c.id for c in get_suite("all", order=1).checks()]
    assert "dims/euler_sums_j2" in ids
    assert "rings/" in ids[0]


def test_dimension_suite_records():
    report = DimsSuite(order=1).run()
    jsonschema.validate(report, SCHEMA)
    records = _by_id(report)
    for item in ("euler_sums_j2", "euler_sums_j4", "M0_table_k2", "M0_table_k4", "M0_table_k6",
                 "M0_table_k8", "eisenstein_printed_value", "Sigma2_first_coefficients"):
        assert records[item]["status"] == "pass", records[item]


def test_memo_is_released_after_a_run():
    ToySuite(order=1).run()
    assert memo_size() == 0


def test_gradient_pairs_pass():
    suite = GradientsSuite(order=1, use_cache=False)
    pairs = [c for c in suite.checks() if c.id.startswith("G") and "_vs_H" in c.id]
    assert len(pairs) == len(PAIRS)
    for check in pairs:
        assert suite.run_check(check)["status"] == "pass", check.id


def test_certificate_compares_the_kernel():
    products = lambda: [x(i) for i in range(1, 11)]
    outcome, detail = _certificate((0, 2), products, lambda: 5, 1, expected_kernel=5)(2)
    assert outcome is True
    assert detail["kernel"] == 5
    outcome, detail = _certificate((0, 2), products, lambda: 5, 1, expected_kernel=99)(2)
    assert outcome is False
    assert detail["expected_kernel"] == 99
    outcome, _ = _certificate((0, 2), lambda: [x(1), x(2)], lambda: 5, 1)(2)
    assert outcome == "inconclusive"


def test_single_relation_checks_the_vector():
    forms = lambda: [x(1), x(4), x(6), x(7)]
    assert _single_relation(forms, [1, -1, -1, -1])(2)[0] is True
    assert _single_relation(forms, [1, 1, 1, 1])(2)[0] is False
    assert _single_relation(lambda: [x(i) for i in range(1, 6)], [1] * 5)(2)[0] is False


def test_sigma2_hilbert_record():
    suite = Sigma2Certificates(order=2, use_cache=False)
    check = next(c for c in suite.checks() if c.id == "sigma2_hilbert")
    assert suite.run_check(check)["status"] == "pass"


def test_level_one_dimensions_are_derived():
    suite = Level1Suite(order=1, use_cache=False)
    checks = {c.id: c for c in suite.checks()}
    for item in ("scalar_dimension_one_list", "S4_table_dimension_one_list", "S2_table_dimension_one_list"):
        assert suite.run_check(checks[item])["status"] == "pass", item


def test_properties_suite():
    report = PropertiesSuite(order=1, use_cache=False).run()
    jsonschema.validate(report, SCHEMA)
    records = _by_id(report)
    for item in ("series_ring_axioms", "support_positivity", "cusp_support_positivity", "Phi_rank_growth",
                 "G_rank_growth", "stable_serialization", "Phi1_retrograde"):
        assert records[item]["status"] == "pass", records[item]


def test_relation_type_is_computed():
    xs = lambda: [x(i) for i in range(1, 6)]
    outcome, detail = _relation_type((0, 4), xs, xs, lambda: 15, {"s[3,1^3]": 1}, 1)(3)
    assert outcome is True
    assert detail["kernel"] == detail["dimension"] == 10
    outcome, _ = _relation_type((0, 4), xs, xs, lambda: 15, {"s[5,1]": 2}, 1)(3)
    assert outcome is False

import json

from slodowy.report import SCHEMA_VERSION, build_report, latex_poly, verify_report
from slodowy.poly import parse_mpoly


def test_report_round_trip_reverifies(result):
    rep = json.loads(json.dumps(build_report(result), sort_keys=True))
    assert rep["schema_version"] == SCHEMA_VERSION
    checks = verify_report(rep, gauge=True)
    assert [k for k, ok in checks.items() if not ok] == []
    assert rep["checks"] == result.checks


def test_rationals_are_strings(result):
    rep = build_report(result)

    def walk(x):
        if isinstance(x, float):
            raise AssertionError(f"float in report: {x}")
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)

    walk(rep)
    assert "/" in rep["degrees"][0] or rep["degrees"][0] == "1"


def test_latex_poly_formatting():
    p = parse_mpoly("-1/3*t1^12*t2 + 2*t10 + -1", 10)
    assert latex_poly(p) == r"-\frac{1}{3} t_1^{12} t_2 + 2 t_{10} - 1"

import json

import pytest

from gqc import propcheck
from gqc.propcheck import CheckResult, run_suite


def test_check_result_records():
    c = CheckResult("x")
    c.record(0.5, 1e-9)
    c.record(-1.0, 1e-9, lambda: {"bad": 1})
    assert c.samples == 2 and c.violations == 1 and c.worst_slack == -1.0
    assert c.counterexamples == [{"bad": 1}] and not c.passed


def test_counterexample_cap():
    c = CheckResult("x")
    for _ in range(10):
        c.record(-1, 0, {"k": 1})
    assert len(c.counterexamples) == propcheck.MAX_COUNTEREXAMPLES


@pytest.mark.parametrize("suite", ["lemma1", "subadditivity", "soundness", "continuity", "theorem1", "invariance"])
def test_suites_pass_small(suite):
    rep = run_suite(suite, samples=25, seed=3)
    assert rep.passed, rep.to_text()


def test_closed_forms_suite():
    assert run_suite("closed-forms").passed


def test_roof_suite_small():
    assert run_suite("roof", samples=2).passed


def test_chord_suite_reports_gap():
    rep = run_suite("chord", samples=1)
    assert not rep.passed
    data = json.loads(rep.counterexamples_json())
    assert data["envelope_equals_chord"][0]["gap"] > 0.1


def test_report_is_deterministic():
    a = run_suite("lemma1", samples=15, seed=11)
    b = run_suite("lemma1", samples=15, seed=11)
    assert a.to_text() == b.to_text()


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")

import pytest

import drmonoid.constants as const
from drmonoid.dr_monoid import build_tower
from drmonoid.field_core import make_field
from drmonoid.suites import (
    SuiteContext,
    SuiteReport,
    divisibility_pairs,
    prime_powers,
    print_report,
    run_suites,
)


_towers = {}


def tower_of(D, norms):
    key = (D, tuple(norms))
    if key not in _towers:
        field = make_field(D)
        _towers[key] = (field, build_tower(field, [field.conductor_from_norm(n) for n in norms]))
    return _towers[key]


def failures(report):
    return [c.as_dict() for c in report.checks if not c.passed]


@pytest.mark.parametrize("suite", const.SUITES)
def test_rational_tower(suite):
    field, tower = tower_of("Q", [8, 24])
    report = run_suites(field, tower, [suite])
    assert report.checks
    assert failures(report) == []


@pytest.mark.parametrize("suite", ["idempotents", "omega", "local", "sigma", "transitions"])
def test_gaussian_tower(suite):
    field, tower = tower_of(-4, [5, 25])
    report = run_suites(field, tower, [suite])
    assert failures(report) == []


@pytest.mark.parametrize("D, norms", [(-3, [4]), (-23, [2])])
def test_idempotents_and_omega(D, norms):
    field, tower = tower_of(D, norms)
    report = run_suites(field, tower, ["idempotents", "omega"])
    assert report.passed


def test_all_expands_to_every_suite():
    field, tower = tower_of("Q", [12])
    report = run_suites(field, tower, [const.SUITE_ALL])
    assert report.suites == const.SUITES
    assert {c.suite for c in report.checks} == set(const.SUITES)


def test_seed_is_deterministic():
    field, tower = tower_of("Q", [45])
    first = run_suites(field, tower, ["omega"], seed=7).as_dict()
    second = run_suites(field, tower, ["omega"], seed=7).as_dict()
    assert first == second


def test_chain_falls_back_to_divisors():
    field, tower = tower_of("Q", [12])
    assert divisibility_pairs(tower) == []
    ctx = SuiteContext(field, tower)
    assert [level.modulus.norm for level in ctx.chain][0] == 12
    assert divisibility_pairs(ctx.chain)


def test_prime_powers(Q):
    result = prime_powers(Q, 10)
    assert [(P.a, e) for P, e in result] == [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]


def test_report_document():
    report = SuiteReport(["omega"])
    report.add("omega", "Q mod [4,0,1]", "good", True, "ignored")
    report.add("omega", "Q mod [4,0,1]", "bad", False, ["x"])
    doc = report.as_dict()
    assert not doc["passed"]
    assert doc["checks"][0]["witness"] is None
    assert doc["checks"][1]["witness"] == ["x"]


def test_print_report(capsys):
    report = SuiteReport(["u1"])
    report.add("u1", "Q", "holds", True)
    report.add("u1", "Q", "fails", False, [1, 2])
    print_report(report.as_dict())
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "Suites: u1"
    assert out[1] == "  [u1] Q holds: OK"
    assert out[2] == "  [u1] Q fails: ERROR"
    assert out[3] == "Witness: [1, 2]"
    assert out[4] == "Result: FAIL"


def test_print_report_observations(capsys):
    report = SuiteReport(["sigma"])
    report.add("sigma", "Q", "holds", True)
    report.observe("sigma", "Q", "falsification", "two candidates", {"candidate_count": 2})
    print_report(report.as_dict())
    out = capsys.readouterr().out.splitlines()
    assert out[2] == "  [sigma] Q falsification: two candidates"
    assert out[3] == "Result: PASS"
    assert [o.text for o in report.falsifications()] == ["two candidates"]


def test_sigma_multiplicity_is_recorded():
    field, tower = tower_of("Q", [4])
    report = run_suites(field, tower, ["sigma"])
    assert failures(report) == []
    (falsification,) = report.falsifications()
    assert falsification.data["candidate_count"] == 2
    assert falsification.data["stabiliser_count"] == 2
    doc = report.as_dict()
    assert doc["observations"][0]["kind"] == "falsification"
    assert doc["passed"]


def test_local_suite_at_three_primes():
    field = make_field(-4)
    tower = build_tower(field, [field.rational_ideal(10)])
    report = run_suites(field, tower, ["local"])
    assert failures(report) == []
    notes = [o.text for o in report.observations if o.kind == "note"]
    assert len(notes) == 3
    assert all("separate equations admit" in text for text in notes)


def test_rational_reciprocity_notes_negative_elements():
    field, tower = tower_of("Q", [8, 24])
    report = run_suites(field, tower, ["reciprocity"])
    (note,) = [o for o in report.observations if o.kind == "note"]
    assert "negative rationals are outside the kernel" in note.text
    assert note.data[0].startswith("-")
    assert report.passed

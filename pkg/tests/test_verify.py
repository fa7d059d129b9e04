import json

import pytest

from goldman_lie.chains import ChainHat
from goldman_lie.intersections import enumerate_intersections
from goldman_lie.verify import (CHECKS, FAIL, VerifyConfig, annihilator_scan,
                                check_length_angle_identity, essentiality_check,
                                pants_counterexample, reversibility_crosscheck, run_all,
                                run_check, scan_power_collisions, to_csv, to_jsonl)
from goldman_lie.words import parse_class


def c(text):
    return parse_class(text, 2)


def test_length_angle_single_crossing(torus):
    (P,) = enumerate_intersections(torus, c("a"), c("b"))
    r0, r1 = check_length_angle_identity(torus, c("a"), c("b"), P)
    assert r0 < 1e-9 and r1 < 1e-9


def test_length_angle_detects_bad_angle(torus):
    (P,) = enumerate_intersections(torus, c("a"), c("b"))
    r0, _ = check_length_angle_identity(torus, c("a"), c("b"), P, angle_offset=0.1)
    assert r0 > 1e-3


def test_power_collision_examples(torus):
    (P,) = enumerate_intersections(torus, c("a"), c("b"))
    assert scan_power_collisions(torus, c("a"), c("b"), P, None, 8)["count"] == 1
    assert scan_power_collisions(torus, c("a"), c("b"), P, "alpha^m", 8)["count"] <= 1
    fresh = c("a a b b a B")
    assert scan_power_collisions(torus, c("a"), c("b"), P, fresh, 8)["count"] == 0


def test_annihilator_examples(torus):
    rep = annihilator_scan(torus, ChainHat.of(c("a b A B")), m_max=5)
    assert rep["witness"] is None
    assert all(all(r["zero"]) for r in rep["rows"])
    rep = annihilator_scan(torus, ChainHat.of(c("b")), [c("a")], m_max=3)
    assert all(r["m0"] == 1 for r in rep["rows"])
    assert len(rep["rows"]) == 4


def test_pants_counterexample(pants_model):
    ex = pants_counterexample(pants_model)
    assert ex["class"] == "a B"
    assert ex["intersections"] == [0, 0, 0]
    rep = essentiality_check(pants_model, c("a B"), pants_model.peripheral)
    assert rep["verdict"] == "contradicted by sample"


def test_essentiality_on_torus(torus):
    assert essentiality_check(torus, c("a b A B"))["verdict"] == "consistent with sampled evidence"
    assert essentiality_check(torus, c("a b"))["verdict"] == "not disjoint"


def test_reversibility_crosscheck_small(torus):
    rep = reversibility_crosscheck(torus, 5, 3, 3)
    assert rep["agree"] and not rep["exact_reversible"]


def test_unknown_claim(torus):
    with pytest.raises(Exception):
        run_check("no-such-claim", torus)


def test_errors_become_fail_records(torus, monkeypatch):
    from goldman_lie import verify
    from goldman_lie.errors import DomainError

    def boom(model, cfg):
        raise DomainError("synthetic")

    monkeypatch.setitem(verify.CHECKS, "grading", boom)
    rec = run_check("grading", torus)
    assert rec.verdict == FAIL and "synthetic" in rec.details["error"]


def test_report_formats(torus):
    recs = run_all(torus, VerifyConfig(), ["homology-sign", "reversibility"])
    lines = to_jsonl(recs).splitlines()
    assert [json.loads(x)["claim"] for x in lines] == ["homology-sign", "reversibility"]
    for x in lines:
        assert set(json.loads(x)) == {"claim", "verdict", "worst_residual", "sample_size", "details"}
    assert to_csv(recs).splitlines()[0] == "claim,verdict,worst_residual,sample_size"


def test_claim_ids_are_descriptive():
    for name in CHECKS:
        assert not any(ch.isdigit() for ch in name)

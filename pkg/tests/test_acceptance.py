"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``.
"""

import itertools
import subprocess
import sys
import time

import pytest

from goldman_lie import one_holed_torus
from goldman_lie.verify import (CONSISTENT, VerifyConfig, check_annihilator, check_cosh_products,
                                check_grading, check_length_angle, check_lie_axioms,
                                check_pants, check_poisson, check_power_collisions,
                                check_reversibility, check_twg_consistency)
from goldman_lie.words import (ClassTilde, ClassUnder, classes_equal_tilde, cyclically_reduce,
                               reduced_words)

CFG = VerifyConfig()
# collected lines are printed in the terminal summary (see conftest.py)
ACCEPTANCE_RESULTS: list[str] = []


def report(n, ok, text):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {text}"
    ACCEPTANCE_RESULTS.append(line)
    print(line)
    return ok


@pytest.fixture(scope="module")
def torus():
    return one_holed_torus(4.0)


def test_cosh_product_law(torus):
    t0 = time.perf_counter()
    rec = check_cosh_products(torus, CFG)
    dt = time.perf_counter() - t0
    ok = (rec.sample_size == 101 and rec.details["worst_absolute"] < 1e-8
          and rec.details["analytic_angle_error"] < 1e-9 and dt < 10)
    assert report(1, ok, f"cosh product law: worst |residual| {rec.details['worst_absolute']:.2e} "
                         f"on 100 pairs, analytic angle error {rec.details['analytic_angle_error']:.1e}, "
                         f"{dt:.1f}s")


def test_length_angle_identities(torus):
    t0 = time.perf_counter()
    rec = check_length_angle(torus, CFG)
    dt = time.perf_counter() - t0
    ok = (rec.details["pairs"] == 20 and rec.details["worst_absolute"] < 1e-8
          and rec.details["double_coset_mismatches"] == 0 and dt < 120)
    assert report(2, ok, f"length-angle identities: worst |residual| "
                         f"{rec.details['worst_absolute']:.2e} over {rec.sample_size} points, "
                         f"u in {{3.5, 4, 5}}, {dt:.1f}s")


def test_goldman_lie_axioms(torus):
    rec = check_lie_axioms(torus, CFG)
    ok = rec.verdict == "pass" and rec.sample_size >= 12 ** 3 + 25
    assert report(3, ok, f"antisymmetry and Jacobi exact on {rec.sample_size} inputs "
                         f"({rec.details['jacobi_failures']} Jacobi failures)")


def test_z2_grading(torus):
    rec = check_grading(torus, CFG)
    ok = rec.verdict == "pass"
    assert report(4, ok, f"grading and iota-equivariance exact on {rec.sample_size} pairs")


def test_twg_consistency(torus):
    rec = check_twg_consistency(torus, CFG)
    ok = rec.verdict == "pass" and set(rec.details) == {"tt", "tu", "ut", "uu"}
    assert report(5, ok, f"four TWG flavors equal quotient images of Goldman bracket "
                         f"on {rec.sample_size} pairs")


def test_annihilator_behaviour(torus):
    rec = check_annihilator(torus, CFG)
    boundary = rec.details["boundary"]
    zeros = all(all(r["zero"]) and len(r["zero"]) == 5 for r in boundary["rows"])
    gen = rec.details["generator"]["rows"]
    ok = (rec.verdict == CONSISTENT and zeros and len(gen) == 4
          and all(r["m0"] == 1 for r in gen))
    assert report(6, ok, f"boundary class annihilates all simple classes for m <= 5; "
                         f"b against a has m0 = 1 in all flavors; verdict '{rec.verdict}'")


def test_pants_exclusion(torus):
    rec = check_pants(torus, CFG)
    ex = rec.details["counterexample"]
    ok = rec.verdict == "pass" and ex["class"] is not None and \
        rec.details["torus_disjoint_non_peripheral"] == []
    assert report(7, ok, f"pants class '{ex['class']}' misses all peripheral classes; "
                         f"torus scan to length 3 finds none")


def test_free_group_reversibility(torus):
    rec = check_reversibility(torus, CFG)
    d = rec.details
    ok = (rec.verdict == "pass" and d["agree"] and not d["exact_reversible"]
          and d["matrix_conjugator_ball"] == 5)
    assert report(8, ok, f"no reversible word of length <= 8 ({d['words_checked']} words), "
                         f"matrix scan at L = 5 agrees")


def test_twisted_unoriented_equivalence():
    words = list(reduced_words(2, 4))
    cls = [cyclically_reduce(w, 2) for w in words]
    bad = 0
    for v, w in itertools.product(cls, repeat=2):
        tilde_equal = classes_equal_tilde(v, w)
        if v.is_trivial or w.is_trivial:
            # the trivial class is zero in the twisted quotient
            under_pm = v.is_trivial and w.is_trivial
            reference = v == w
        else:
            under_pm = ClassUnder.of(v).representative == ClassUnder.of(w).representative
            reference = ClassTilde.of(v) == ClassTilde.of(w)
        bad += tilde_equal != under_pm
        bad += tilde_equal != reference
    ok = bad == 0
    assert report(9, ok, f"u(a) = +-u(b) iff a~ = b~ on all {len(words) ** 2} pairs of words "
                         f"of length <= 4")


def test_power_collision_bounds(torus):
    rec = check_power_collisions(torus, CFG)
    d = rec.details
    ok = (rec.verdict == CONSISTENT and d["m_max"] == 8 and d["max_fixed_target_hits"] <= 2
          and d["max_moving_target_hits"] <= 1 and rec.sample_size > 0)
    assert report(10, ok, f"max fixed-target hits {d['max_fixed_target_hits']} (bound 2), "
                          f"max alpha^m-target hits {d['max_moving_target_hits']} (bound 1) "
                          f"over {rec.sample_size} scans, m_max = 8")


def test_poisson_pbw(torus):
    rec = check_poisson(torus, CFG)
    ok = rec.verdict == "pass"
    failed = [k for k, v in rec.details.items() if v]
    assert report(11, ok, "Poisson axioms for k in {0, 1, 1/2}, k = 0 degree one, "
                          "UEA confluence: " + ("all exact" if ok else f"failed {failed}"))


def test_determinism():
    cmd = [sys.executable, "-m", "goldman_lie.cli", "verify", "all"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    ok = first.returncode == 0 and first.stdout == second.stdout and first.stdout
    assert report(12, bool(ok), f"two 'verify all' runs byte-identical "
                                f"({len(first.stdout)} bytes, exit {first.returncode})")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))

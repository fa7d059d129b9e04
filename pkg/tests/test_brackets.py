import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from goldman_lie.brackets import (goldman_bracket, include_hat, lift, star_infty, star_zero,
                                  twg_bracket, twg_tilde_tilde, twg_under_under, twg_via_goldman)
from goldman_lie.chains import (ChainHat, ChainTilde, ChainUnder, iota_chain, project_A0,
                                project_A1, to_tilde, to_under)
from goldman_lie.errors import ForeignPointError, RankMismatchError
from goldman_lie.intersections import enumerate_intersections
from goldman_lie.words import cyclic_classes, parse_class

from strategies import classes


def c(text):
    return parse_class(text, 2)


def H(*texts):
    return ChainHat.of(*(c(t) for t in texts))


def test_single_crossing_products(torus):
    (P,) = enumerate_intersections(torus, c("a"), c("b"))
    # (a, b) is a negative frame in this model, so the positive product uses b^-1
    assert P.sign == -1
    assert star_zero(torus, c("a"), c("b"), P) == c("a B")
    assert star_infty(torus, c("a"), c("b"), P) == c("a b")


def test_foreign_point(torus):
    (P,) = enumerate_intersections(torus, c("a"), c("b"))
    with pytest.raises(ForeignPointError):
        star_zero(torus, c("a"), c("a B"), P)


def test_goldman_examples(torus):
    assert goldman_bracket(torus, H("a"), H("b")) == ChainHat([(c("a b"), -1)])
    x = ChainHat([(c("a"), 1), (c("a b"), Fraction(1, 2))])
    assert goldman_bracket(torus, x, x).is_zero
    assert goldman_bracket(torus, H("a"), H("a b A B")).is_zero


def test_twg_examples(torus):
    ta, tb = ChainTilde.of(c("a")), ChainTilde.of(c("b"))
    assert twg_tilde_tilde(torus, ta, tb) == ChainTilde([(c("a B"), 1), (c("a b"), -1)])
    ua, ub = ChainUnder.of(c("a")), ChainUnder.of(c("b"))
    assert twg_under_under(torus, ua, ub) == ChainTilde([(c("a B"), -1), (c("a b"), -1)])
    boundary = c("a b A B")
    for flavor in ("tt", "tu", "ut", "uu"):
        X = (ChainTilde if flavor[0] == "t" else ChainUnder).of(c("a"))
        Y = (ChainTilde if flavor[1] == "t" else ChainUnder).of(boundary)
        assert twg_bracket(torus, flavor, X, Y).is_zero


def test_rank_checked(torus):
    with pytest.raises(RankMismatchError):
        goldman_bracket(torus, ChainHat.of(parse_class("a", 3)), H("b"))


def test_lie_axioms_exhaustive_length_two(torus):
    basis = [ChainHat.of(w) for w in cyclic_classes(2, 2)]
    for x, y in itertools.product(basis, repeat=2):
        assert goldman_bracket(torus, x, y) == -goldman_bracket(torus, y, x)
    for x, y, z in itertools.product(basis, repeat=3):
        jac = (goldman_bracket(torus, x, goldman_bracket(torus, y, z)) +
               goldman_bracket(torus, y, goldman_bracket(torus, z, x)) +
               goldman_bracket(torus, z, goldman_bracket(torus, x, y)))
        assert jac.is_zero


@settings(max_examples=30)
@given(classes(3), classes(3))
def test_iota_is_lie_automorphism(a, b):
    from goldman_lie import one_holed_torus
    t = one_holed_torus(4.0)
    x, y = ChainHat.of(a), ChainHat.of(b)
    assert iota_chain(goldman_bracket(t, x, y)) == \
        goldman_bracket(t, iota_chain(x), iota_chain(y))


@settings(max_examples=30)
@given(classes(3), classes(3))
def test_grading(a, b):
    from goldman_lie import one_holed_torus
    t = one_holed_torus(4.0)
    x, y = ChainHat.of(a), ChainHat.of(b)
    x0, x1, y0, y1 = project_A0(x), project_A1(x), project_A0(y), project_A1(y)
    assert project_A1(goldman_bracket(t, x0, y0)).is_zero
    assert project_A0(goldman_bracket(t, x0, y1)).is_zero
    assert project_A1(goldman_bracket(t, x1, y1)).is_zero


@settings(max_examples=40)
@given(classes(4, nontrivial=True), classes(4, nontrivial=True))
def test_twg_direct_matches_goldman_route(a, b):
    from goldman_lie import one_holed_torus
    t = one_holed_torus(4.0)
    for flavor in ("tt", "tu", "ut", "uu"):
        X = (ChainTilde if flavor[0] == "t" else ChainUnder).of(a)
        Y = (ChainTilde if flavor[1] == "t" else ChainUnder).of(b)
        assert twg_bracket(t, flavor, X, Y) == twg_via_goldman(t, X, Y)


@settings(max_examples=30)
@given(classes(3, nontrivial=True), classes(3, nontrivial=True))
def test_quotient_compatibility(a, b):
    """Projected Goldman brackets equal half the directly computed TWG
    brackets, since the even and odd parts are half the lifts."""
    from goldman_lie import one_holed_torus
    t = one_holed_torus(4.0)
    x, y = ChainHat.of(a), ChainHat.of(b)
    half = Fraction(1, 2)
    parts = {"t": project_A0, "u": project_A1}
    quotient = {"tt": to_tilde, "tu": to_under, "ut": to_under, "uu": to_tilde}
    for flavor, q in quotient.items():
        lhs = q(goldman_bracket(t, parts[flavor[0]](x), parts[flavor[1]](y)))
        X = (ChainTilde if flavor[0] == "t" else ChainUnder).of(a)
        Y = (ChainTilde if flavor[1] == "t" else ChainUnder).of(b)
        assert lhs == twg_bracket(t, flavor, X, Y) * half


def test_include_hat_roundtrip():
    x = ChainHat([(c("a b"), 2), (c("B"), Fraction(1, 3)), (c("a"), -1)])
    t, u = include_hat(x)
    assert lift(t) + lift(u) == x

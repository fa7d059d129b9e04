import math

import pytest
from hypothesis import given, strategies as st

from goldman_lie.errors import DomainError
from goldman_lie.moebius import (INF, Axis, Isometry, Kind, axis, check_cosh_product, classify,
                                 close_to, compose, crossing_frame, forward_angle, inverse,
                                 translation_length)

LAM = 2 + math.sqrt(3)
D = Isometry(LAM, 0, 0, 1 / LAM)
M = Isometry(2, 1, 3, 2)


def test_compose_examples():
    assert close_to(compose(M, inverse(M)), Isometry.identity())
    assert close_to(compose(Isometry.identity(), M), M)
    P = compose(D, M)
    assert close_to(P, Isometry(2 * LAM, LAM, 3 / LAM, 2 / LAM))


def test_classify_examples():
    assert classify(Isometry(1, 0.5, 0, 1)) is Kind.PARABOLIC
    assert classify(Isometry(3, 0, 0, 1 / 3)) is Kind.HYPERBOLIC
    assert classify(Isometry(1, 0, 0, 1)) is Kind.IDENTITY
    assert classify(Isometry(math.cos(1), -math.sin(1), math.sin(1), math.cos(1))) is Kind.ELLIPTIC
    assert classify(Isometry(-3, 0, 0, -1 / 3)) is Kind.HYPERBOLIC


def test_translation_length_examples():
    assert translation_length(D) == pytest.approx(2 * math.acosh(2), rel=1e-12)
    with pytest.raises(DomainError):
        translation_length(Isometry(1, 1, 0, 1))


def test_axis_examples():
    ax = axis(D)
    assert ax.repelling == 0 and ax.attracting == INF
    ax = axis(M)
    assert ax.repelling == pytest.approx(-1 / math.sqrt(3))
    assert ax.attracting == pytest.approx(1 / math.sqrt(3))
    inv = axis(inverse(M))
    assert inv.repelling == pytest.approx(ax.attracting)
    assert inv.attracting == pytest.approx(ax.repelling)


def test_cosh_product_analytic_pair():
    assert abs(compose(D, M).trace) == pytest.approx(8)
    assert forward_angle(axis(D), axis(M)) == pytest.approx(math.pi / 2, abs=1e-9)
    assert check_cosh_product(D, M) < 1e-9
    assert check_cosh_product(M, D) == pytest.approx(check_cosh_product(D, M), abs=1e-12)


def test_cosh_product_rejects_equal_axes():
    with pytest.raises(DomainError):
        check_cosh_product(D, compose(D, D))


def test_crossing_frame_none_for_disjoint():
    assert crossing_frame(Axis(0, INF), Axis(1, 2)) is None


@given(st.floats(0.3, 3), st.floats(-2, 2), st.floats(0.3, 3))
def test_det_and_power_law(t, x, _s):
    g = compose(Isometry(1, x, 0, 1), compose(Isometry(math.exp(t), 0, 0, math.exp(-t)),
                                              Isometry(1, -x, 0, 1)))
    assert g.det == pytest.approx(1, abs=1e-10)
    assert compose(g, inverse(g)).det == pytest.approx(1, abs=1e-10)
    g_n = g
    for n in range(2, 6):
        g_n = compose(g_n, g)
        assert translation_length(g_n) == pytest.approx(n * translation_length(g), rel=1e-9)


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
def test_classify_sign_invariant(p, q, r, s):
    if abs(p * s - q * r) < 1e-3:
        return
    if p * s - q * r < 0:
        p, q = -p, -q
    g = Isometry(p, q, r, s)
    if abs(abs(g.trace) - 2) < 1e-6:
        return
    assert classify(g) is classify(Isometry(-p, -q, -r, -s))


@given(st.floats(0.2, 2), st.floats(0.2, 2), st.floats(0.05, math.pi - 0.05))
def test_cosh_product_random_crossings(t1, t2, phi):
    # axis through i at angle phi against the imaginary axis
    g = Isometry(math.exp(t1 / 2), 0, 0, math.exp(-t1 / 2))
    c, s = math.cos(phi / 2), math.sin(phi / 2)
    R = Isometry(c, s, -s, c)  # elliptic rotation about i
    h = compose(R, compose(Isometry(math.exp(t2 / 2), 0, 0, math.exp(-t2 / 2)), inverse(R)))
    if crossing_frame(axis(g), axis(h)) is None:
        return
    assert check_cosh_product(g, h) < 1e-9

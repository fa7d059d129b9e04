import json
import math

import pytest

from goldman_lie.errors import CertificateError, DomainError, GoldmanError
from goldman_lie.moebius import Isometry, Kind, classify, close_to, compose
from goldman_lie.surface import (TORUS_U_MIN, custom_surface, geodesic_length, load_surface,
                                 one_holed_torus, pants, parse_surface_spec, represent,
                                 represent_word, word_ball)
from goldman_lie.words import iota, parse_class, power, reduced_words

from strategies import classes
from hypothesis import given


def test_torus_generators(torus):
    lam = 2 + math.sqrt(3)
    assert close_to(represent_word(torus, (1,)), Isometry(lam, 0, 0, 1 / lam))
    assert close_to(represent_word(torus, (1, -1)), Isometry.identity())


def test_commutator_trace(torus):
    comm = represent(torus, parse_class("a b A B", 2))
    assert comm.trace == pytest.approx(-34, abs=1e-9)
    assert classify(comm) is Kind.HYPERBOLIC


def test_threshold():
    assert TORUS_U_MIN == pytest.approx(4 / math.sqrt(3))
    with pytest.raises(GoldmanError):
        one_holed_torus(2.0)
    one_holed_torus(2.4)


def test_certificate(torus):
    cert = torus.certificate
    assert cert.passed and cert.schottky
    assert cert.L_cert == 6
    assert cert.min_translation_length >= cert.delta
    # every nontrivial reduced word up to length 6 is hyperbolic
    for w in reduced_words(2, 6, 1):
        assert abs(represent_word(torus, w).trace) > 2


def test_certificate_reports_violating_word():
    with pytest.raises(CertificateError) as exc:
        one_holed_torus(4.0, delta=100.0)
    assert exc.value.word


def test_pants_separation():
    p = pants()
    assert p.certificate.passed and p.topology == (0, 3)
    assert p.euler_characteristic == -1
    with pytest.raises(GoldmanError):
        pants(separation=3.0)


def test_lengths(torus):
    a = parse_class("a", 2)
    assert geodesic_length(torus, a) == pytest.approx(2 * math.acosh(2), rel=1e-12)
    for m in range(1, 5):
        assert geodesic_length(torus, power(a, m)) == pytest.approx(m * geodesic_length(torus, a))
    with pytest.raises(DomainError):
        geodesic_length(torus, parse_class("1", 2))


@given(classes(6, nontrivial=True))
def test_length_reversal_invariant(c):
    t = one_holed_torus(4.0)
    assert geodesic_length(t, c) == pytest.approx(geodesic_length(t, iota(c)), rel=1e-12)


@given(classes(6, nontrivial=True))
def test_represent_inverse(c):
    t = one_holed_torus(4.0)
    # represent(c) and represent(iota c) are inverse up to conjugacy
    assert abs(represent(t, c).trace) == pytest.approx(abs(represent(t, iota(c)).trace), rel=1e-9)
    g = represent_word(t, c.letters)
    assert close_to(compose(g, represent_word(t, tuple(-x for x in reversed(c.letters)))),
                    Isometry.identity(), 1e-6)


def test_word_ball_is_bfs(torus):
    ball = word_ball(torus, 3)
    lengths = [len(ball.word(i)) for i in range(len(ball.length))]
    assert lengths == sorted(lengths)
    assert ball.count_upto(3) == 1 + 4 + 12 + 36


def test_surface_specs(tmp_path):
    assert parse_surface_spec("torus1:u=5").family_parameter == 5
    assert parse_surface_spec("pants:s=6").topology == (0, 3)
    with pytest.raises(GoldmanError):
        parse_surface_spec("klein:u=4")
    cfg = {"generators": [[[2 + math.sqrt(3), 0], [0, 2 - math.sqrt(3)]], [[2, 1], [3, 2]]],
           "topology": [1, 1], "peripheral": ["a b A B"], "simple": ["a", "b"],
           "certificate": {"L_cert": 5, "delta": 0.05}}
    path = tmp_path / "s.json"
    path.write_text(json.dumps(cfg))
    m = load_surface(path)
    assert m.rank == 2 and m.certificate.L_cert == 5


def test_custom_surface_rejects_elliptic():
    c, s = math.cos(0.3), math.sin(0.3)
    with pytest.raises(GoldmanError):
        custom_surface([[[c, -s], [s, c]], [[2, 1], [3, 2]]], (1, 1), ["a b A B"], ["a"])

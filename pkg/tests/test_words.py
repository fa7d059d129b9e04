import itertools

import pytest
from hypothesis import given, strategies as st

from goldman_lie.errors import RankMismatchError, WordParseError
from goldman_lie.words import (ClassTilde, ClassUnder, UnderRelation,
                               are_commensurable, classes_equal_tilde, classes_equal_under,
                               cyclic_classes, cyclically_reduce, exponent_sums, format_word,
                               free_reduce, inverse_word, iota, is_reversible, least_rotation,
                               multiply, parse_class, parse_word, power, reduced_words, root)

from strategies import classes, raw_words

a, A, b, B = 1, -1, 2, -2


def cls(text):
    return parse_class(text, 2)


def test_canonical_examples():
    assert cyclically_reduce([a, b, B, a], 2) == cls("a a")
    assert cyclically_reduce([B, a, b], 2) == cls("a")
    assert cyclically_reduce([], 2).is_trivial


def test_iota_examples():
    assert iota(cls("a b")) == cyclically_reduce([B, A], 2)
    assert iota(cls("1")).is_trivial


def test_power_examples():
    assert power(cls("a"), 3) == cls("a a a")
    assert power(cls("a b"), 2) == cls("a b a b")
    assert power(cls("1"), 5).is_trivial
    assert power(cls("a b"), 0).is_trivial


def test_reversible_examples():
    assert is_reversible(cls("1"))
    assert not is_reversible(cls("a"))
    assert not is_reversible(cls("a b A B"))


def test_class_comparison_examples():
    ab, ab_inv = cls("a b"), cls("B A")
    assert classes_equal_tilde(ab, ab_inv)
    assert classes_equal_under(ab, ab_inv) is UnderRelation.NEGATED
    assert classes_equal_under(cls("a"), cls("a")) is UnderRelation.EQUAL
    assert not classes_equal_tilde(cls("a"), cls("b"))
    assert classes_equal_under(cls("a"), cls("b")) is UnderRelation.DISTINCT


def test_exponent_sums_examples():
    assert exponent_sums(cls("a b A B")) == (0, 0)
    assert exponent_sums(cls("a a b")) == (2, 1)
    assert exponent_sums(cls("1")) == (0, 0)


def test_letter_order_and_shortlex():
    # a < A < b < B, shorter words first
    assert [str(c) for c in cyclic_classes(2, 1)] == ["a", "A", "b", "B"]
    cs = cyclic_classes(2, 3)
    assert cs == sorted(cs)


def test_parse_and_format():
    assert parse_word("a^3 b^-1") == (a, a, a, B)
    assert parse_word("abAB") == (a, b, A, B)
    assert parse_word("1") == ()
    assert format_word((a, b, A, B)) == "a b A B"
    with pytest.raises(WordParseError) as exc:
        parse_word("a c", 2)
    assert exc.value.token == "c"
    with pytest.raises(WordParseError):
        parse_word("a$")


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        classes_equal_tilde(parse_class("a", 2), parse_class("a", 3))


def test_under_rejects_trivial():
    with pytest.raises(Exception):
        ClassUnder.of(cls("1"))


def test_root_of_power():
    r, n = root(cls("a b a b a b"))
    assert (r, n) == (cls("a b"), 3)


@given(raw_words(10))
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert all(x != -y for x, y in zip(r, r[1:]))


@given(raw_words(8), raw_words(8))
def test_conjugation_invariance(w, g):
    c = cyclically_reduce(w, 2)
    assert cyclically_reduce(multiply(g, w, inverse_word(g)), 2) == c


@given(raw_words(8))
def test_rotation_invariance(w):
    r = free_reduce(w)
    for k in range(len(r)):
        assert cyclically_reduce(r[k:] + r[:k], 2) == cyclically_reduce(r, 2)


@given(classes(8))
def test_iota_is_involution(c):
    assert iota(iota(c)) == c


@given(classes(6), st.integers(1, 4))
def test_power_root(c, m):
    if c.is_trivial:
        return
    r, n = root(power(c, m))
    assert power(r, n) == power(c, m)
    assert n % m == 0


@given(classes(8))
def test_least_rotation_is_minimal(c):
    w = c.letters
    rots = [w[k:] + w[:k] for k in range(len(w))] or [()]
    assert least_rotation(w) == w == min(rots, key=lambda r: [(abs(x), x < 0) for x in r])


@given(classes(6, nontrivial=True), classes(6, nontrivial=True))
def test_tilde_and_under_keys(v, w):
    tv, tw = ClassTilde.of(v), ClassTilde.of(w)
    assert (tv == tw) == classes_equal_tilde(v, w)
    uv, uw = ClassUnder.of(v), ClassUnder.of(w)
    rel = classes_equal_under(v, w)
    same_basis = uv.representative == uw.representative
    assert same_basis == (rel is not UnderRelation.DISTINCT)
    if same_basis:
        assert (uv.sign == uw.sign) == (rel is UnderRelation.EQUAL)


@given(classes(6, nontrivial=True), st.integers(1, 3), st.integers(1, 3))
def test_commensurable_powers(c, m, n):
    assert are_commensurable(power(c, m), power(iota(c), n))


def test_no_reversible_words_short_exhaustive():
    for w in reduced_words(2, 6, 1):
        assert not is_reversible(cyclically_reduce(w, 2))


def test_cyclic_classes_match_brute_force():
    seen = set()
    for n in range(0, 5):
        for w in itertools.product([a, A, b, B], repeat=n):
            seen.add(cyclically_reduce(w, 2))
    assert set(cyclic_classes(2, 4, include_trivial=True)) == seen

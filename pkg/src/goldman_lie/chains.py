"""Exact rational linear combinations of classes.

Three chain types mirror the three class notions:

* :class:`ChainHat` -- keyed by directed classes (:class:`CyclicWord`).
* :class:`ChainTilde` -- keyed by unoriented classes (:class:`ClassTilde`).
* :class:`ChainUnder` -- keyed by sign-twisted classes, where ``w`` equals
  ``-iota(w)`` and the trivial class is zero.

Coefficients are :class:`fractions.Fraction`; zero terms are never stored.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import DomainError, RankMismatchError
from .words import (ClassTilde, ClassUnder, CyclicWord, iota, parse_class)

Number = int | Fraction


def _frac(c) -> Fraction:
    if isinstance(c, float):
        raise TypeError("chain coefficients must be exact (int, Fraction or 'p/q' string)")
    return Fraction(c)


class _Chain:
    """Immutable sparse vector; subclasses define how keys normalise."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[tuple[object, Number]] | Mapping = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            key, c = self._normalise(key, _frac(c))
            if key is None or c == 0:
                continue
            acc[key] = acc.get(key, 0) + c
        self._terms = tuple(sorted(((k, v) for k, v in acc.items() if v != 0),
                                   key=lambda kv: kv[0]))
        self._hash = None

    @staticmethod
    def _normalise(key, c):
        return key, c

    # -- container protocol
    def __iter__(self) -> Iterator[tuple[object, Fraction]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def items(self):
        return self._terms

    def keys(self):
        return [k for k, _ in self._terms]

    def coeff(self, key) -> Fraction:
        key, sign = self._normalise(key, Fraction(1))
        for k, v in self._terms:
            if k == key:
                return v * sign
        return Fraction(0)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    # -- arithmetic
    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def __add__(self, other):
        self._check(other)
        return type(self)(self._terms + other._terms)

    def __sub__(self, other):
        self._check(other)
        return type(self)(self._terms + tuple((k, -v) for k, v in other._terms))

    def __neg__(self):
        return type(self)((k, -v) for k, v in self._terms)

    def __mul__(self, scalar):
        s = _frac(scalar)
        return type(self)((k, v * s) for k, v in self._terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        return type(other) is type(self) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self._terms))
        return self._hash

    # -- text
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, v in self._terms:
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            coeff = "" if mag == 1 else f"{mag}*"
            parts.append(f"{sign} {coeff}[{self._key_str(k)}]")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"

    @staticmethod
    def _key_str(k) -> str:
        return str(k)

    def to_json(self) -> list[dict]:
        return [{"class": self._key_str(k), "coeff": f"{v.numerator}/{v.denominator}"}
                for k, v in self._terms]

    @classmethod
    def zero(cls):
        return cls(())


class ChainHat(_Chain):
    __slots__ = ()

    @staticmethod
    def _normalise(key, c):
        if not isinstance(key, CyclicWord):
            raise DomainError(f"ChainHat keys must be CyclicWord, got {type(key).__name__}")
        return key, c

    @classmethod
    def of(cls, *words: CyclicWord, coeff: Number = 1) -> "ChainHat":
        return cls((w, coeff) for w in words)

    @classmethod
    def from_json(cls, data: list[dict], rank: int) -> "ChainHat":
        return cls((parse_class(t["class"], rank), Fraction(t["coeff"])) for t in data)

    @property
    def rank(self) -> int | None:
        return self._terms[0][0].rank if self._terms else None


class ChainTilde(_Chain):
    __slots__ = ()

    @staticmethod
    def _normalise(key, c):
        if isinstance(key, CyclicWord):
            key = ClassTilde.of(key)
        if not isinstance(key, ClassTilde):
            raise DomainError(f"ChainTilde keys must be ClassTilde, got {type(key).__name__}")
        return key, c

    @classmethod
    def of(cls, *words: CyclicWord, coeff: Number = 1) -> "ChainTilde":
        return cls((w, coeff) for w in words)

    @classmethod
    def from_json(cls, data: list[dict], rank: int) -> "ChainTilde":
        return cls((parse_class(t["class"], rank), Fraction(t["coeff"])) for t in data)


class ChainUnder(_Chain):
    __slots__ = ()

    @staticmethod
    def _normalise(key, c):
        if isinstance(key, CyclicWord):
            if key.is_trivial:
                return None, c
            key = ClassUnder.of(key)
        if not isinstance(key, ClassUnder):
            raise DomainError(f"ChainUnder keys must be ClassUnder, got {type(key).__name__}")
        return key.basis, c * key.sign

    @classmethod
    def of(cls, *words: CyclicWord, coeff: Number = 1) -> "ChainUnder":
        return cls((w, coeff) for w in words)

    @classmethod
    def from_json(cls, data: list[dict], rank: int) -> "ChainUnder":
        return cls((parse_class(t["class"], rank), Fraction(t["coeff"])) for t in data)


# ---------------------------------------------------------------- maps

def iota_chain(x: ChainHat) -> ChainHat:
    return ChainHat((iota(w), c) for w, c in x)


def project_A0(x: ChainHat) -> ChainHat:
    """Even part ``(x + iota x) / 2``."""
    return (x + iota_chain(x)) * Fraction(1, 2)


def project_A1(x: ChainHat) -> ChainHat:
    """Odd part ``(x - iota x) / 2``."""
    return (x - iota_chain(x)) * Fraction(1, 2)


def to_tilde(x: ChainHat) -> ChainTilde:
    """Forget orientation: ``w`` and ``iota w`` become one basis element."""
    return ChainTilde(iter(x))


def to_under(x: ChainHat) -> ChainUnder:
    """Quotient by the even part: ``iota w`` becomes ``-w`` and **1** dies."""
    return ChainUnder(iter(x))


def lift_tilde(x: ChainTilde) -> ChainHat:
    """Section onto the even part: the class of ``w`` goes to ``w + iota w``."""
    return ChainHat([(k.representative, c) for k, c in x] +
                    [(iota(k.representative), c) for k, c in x])


def lift_under(x: ChainUnder) -> ChainHat:
    """Section onto the odd part: the class of ``w`` goes to ``w - iota w``."""
    return ChainHat([(k.representative, c) for k, c in x] +
                    [(iota(k.representative), -c) for k, c in x])


def descend_tilde(x: ChainHat) -> ChainTilde:
    """Inverse of :func:`lift_tilde` on the even part."""
    return to_tilde(x) * Fraction(1, 2)


def descend_under(x: ChainHat) -> ChainUnder:
    """Inverse of :func:`lift_under` on the odd part."""
    return to_under(x) * Fraction(1, 2)


def same_rank(*chains) -> int | None:
    ranks = set()
    for ch in chains:
        for k, _ in ch:
            w = k if isinstance(k, CyclicWord) else k.representative
            ranks.add(w.rank)
    if len(ranks) > 1:
        raise RankMismatchError(f"mixed ranks {sorted(ranks)}")
    return ranks.pop() if ranks else None

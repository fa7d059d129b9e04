"""Symmetric and enveloping algebras on the unoriented/twisted basis.

The Lie algebra of directed classes splits as ``A0 + A1`` and is
identified with ``K pi~ + K pi_`` through ``w~ -> w + iota w`` and
``w_ -> w - iota w``.  Basis factors are therefore :class:`ClassTilde`
(all classes, including the trivial one) and :class:`ClassUnder` with sign
+1 (nontrivial classes).  Every tilde factor sorts before every twisted
factor; within a tier factors sort by their representative word.

:class:`PBWElement` is a rational combination of sorted factor tuples and
serves as the PBW coordinates in both algebras:

* in the symmetric algebra the product is commutative and the Poisson
  bracket is the deformed TWG bracket extended by the Leibniz rule;
* in the enveloping algebra a product of factors in arbitrary order is
  brought to sorted order with ``x y = y x + [x, y]``, where ``[x, y]`` is
  the (undeformed) bracket of the two factors.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .brackets import twg_basis_pair, twg_via_goldman
from .chains import ChainHat, ChainTilde, ChainUnder
from .errors import DomainError
from .intersections import algebraic_intersection_number
from .surface import SurfaceModel
from .words import ClassTilde, ClassUnder, CyclicWord, iota, parse_class

Factor = ClassTilde | ClassUnder
Monomial = tuple  # sorted tuple of factors


def factor_key(f: Factor):
    if isinstance(f, ClassTilde):
        return (0, f.representative.sort_key)
    if isinstance(f, ClassUnder):
        return (1, f.representative.sort_key)
    raise DomainError(f"not a basis factor: {f!r}")


def _check_factor(f) -> Factor:
    if isinstance(f, ClassUnder):
        if f.sign != 1:
            raise DomainError("twisted factors must be basis elements (sign +1)")
        return f
    if isinstance(f, ClassTilde):
        return f
    raise DomainError(f"not a basis factor: {f!r}")


def sort_monomial(factors: Iterable[Factor]) -> Monomial:
    return tuple(sorted((_check_factor(f) for f in factors), key=factor_key))


def format_factor(f: Factor) -> str:
    tag = "~" if isinstance(f, ClassTilde) else "_"
    return f"{f.representative}{tag}"


def format_monomial(m: Monomial) -> str:
    return " * ".join(f"({format_factor(f)})" for f in m) if m else "1"


class PBWElement:
    """Exact combination of PBW monomials; immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[Monomial, object]] = ()):
        acc: dict[Monomial, Fraction] = {}
        for mono, c in terms:
            if isinstance(c, float):
                raise TypeError("PBW coefficients must be exact")
            c = Fraction(c)
            if c == 0:
                continue
            acc[mono] = acc.get(mono, 0) + c
        self._terms = tuple(sorted(((m, c) for m, c in acc.items() if c != 0),
                                   key=lambda mc: _mono_key(mc[0])))

    @classmethod
    def monomial(cls, *factors: Factor, coeff=1) -> "PBWElement":
        return cls([(sort_monomial(factors), coeff)])

    @classmethod
    def scalar(cls, c=1) -> "PBWElement":
        return cls([((), c)])

    @classmethod
    def zero(cls) -> "PBWElement":
        return cls()

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, mono: Monomial) -> Fraction:
        for m, c in self._terms:
            if m == mono:
                return c
        return Fraction(0)

    def degree(self) -> int:
        return max((len(m) for m, _ in self._terms), default=0)

    def homogeneous(self, d: int) -> "PBWElement":
        return PBWElement((m, c) for m, c in self._terms if len(m) == d)

    def __add__(self, other: "PBWElement") -> "PBWElement":
        return PBWElement(self._terms + other._terms)

    def __sub__(self, other: "PBWElement") -> "PBWElement":
        return PBWElement(self._terms + tuple((m, -c) for m, c in other._terms))

    def __neg__(self):
        return PBWElement((m, -c) for m, c in self._terms)

    def scale(self, s) -> "PBWElement":
        s = Fraction(s)
        return PBWElement((m, c * s) for m, c in self._terms)

    def __rmul__(self, s):
        return self.scale(s)

    def __mul__(self, other):
        """Commutative (symmetric algebra) product; scalars scale."""
        if not isinstance(other, PBWElement):
            return self.scale(other)
        return PBWElement((sort_monomial(m1 + m2), c1 * c2)
                          for m1, c1 in self._terms for m2, c2 in other._terms)

    def __eq__(self, other):
        return isinstance(other, PBWElement) and self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for m, c in self._terms:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = format_monomial(m)
            out.append(f"{sign} {body}" if mag == 1 else f"{sign} {mag}*{body}")
        text = " ".join(out)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"PBWElement({str(self)!r})"

    def to_json(self) -> list[dict]:
        return [{"factors": [{"type": "tilde" if isinstance(f, ClassTilde) else "under",
                              "class": str(f.representative)} for f in m],
                 "coeff": f"{c.numerator}/{c.denominator}"} for m, c in self._terms]

    @classmethod
    def from_json(cls, data: list[dict], rank: int) -> "PBWElement":
        terms = []
        for t in data:
            fs = [parse_factor(x["class"], x["type"], rank) for x in t["factors"]]
            terms.append((sort_monomial(fs), Fraction(t["coeff"])))
        return cls(terms)


def _mono_key(m: Monomial):
    return (len(m), tuple(factor_key(f) for f in m))


def parse_factor(text: str, kind: str, rank: int) -> Factor:
    """A basis factor from a class string; ``kind`` is ``tilde`` or ``under``.

    A twisted class given by its larger orientation is rejected rather than
    silently negated, since a factor carries no coefficient.
    """
    w = parse_class(text, rank)
    if kind in ("tilde", "t", "~"):
        return ClassTilde.of(w)
    if kind in ("under", "u", "_"):
        u = ClassUnder.of(w)
        if u.sign != 1:
            raise DomainError(f"{text!r} is minus the basis element {u.representative}; "
                              "write the basis orientation instead")
        return u
    raise DomainError(f"unknown factor type {kind!r}")


# ------------------------------------------------------------- embeddings

def from_tilde(x: ChainTilde) -> PBWElement:
    return PBWElement(((k,), c) for k, c in x)


def from_under(x: ChainUnder) -> PBWElement:
    return PBWElement(((k,), c) for k, c in x)


def from_hat(x: ChainHat) -> PBWElement:
    """Degree-one inclusion ``w -> (w~ + w_) / 2``."""
    half = Fraction(1, 2)
    return (from_tilde(ChainTilde((w, c * half) for w, c in x)) +
            from_under(ChainUnder((w, c * half) for w, c in x)))


def to_hat(x: PBWElement) -> ChainHat:
    """Inverse of :func:`from_hat` on degree-one elements."""
    terms = []
    for m, c in x:
        if len(m) != 1:
            raise DomainError("only degree-one elements map back to directed chains")
        (f,) = m
        w = f.representative
        if isinstance(f, ClassTilde):
            terms += [(w, c), (iota(w), c)]
        else:
            terms += [(w, c), (iota(w), -c)]
    return ChainHat(terms)


def _chain_to_pbw(ch) -> PBWElement:
    return from_tilde(ch) if isinstance(ch, ChainTilde) else from_under(ch)


def _as_chain(f: Factor):
    return ChainTilde([(f, 1)]) if isinstance(f, ClassTilde) else ChainUnder([(f, 1)])


def _flavor(x: Factor, y: Factor) -> str:
    return ("t" if isinstance(x, ClassTilde) else "u") + ("t" if isinstance(y, ClassTilde) else "u")


def _partner(f: Factor, w: CyclicWord) -> Factor | None:
    # the other-tier factor of the same class, used by the deformation term
    if isinstance(f, ClassTilde):
        return None if w.is_trivial else ClassUnder(f.representative, 1)
    return ClassTilde(f.representative)


# ------------------------------------------------------------- brackets

def deformed_bracket_basis(model: SurfaceModel, x: Factor, y: Factor, k=0,
                           depth=None, method=None) -> PBWElement:
    """``[x, y]_k``: the TWG bracket minus ``k (a, b)`` times the product
    of the opposite-tier factors of ``a`` and ``b``."""
    x, y = _check_factor(x), _check_factor(y)
    k = Fraction(k)
    flavor = _flavor(x, y)
    out = _chain_to_pbw(twg_basis_pair(model, flavor, x.representative, y.representative,
                                       depth, method))
    if k == 0:
        return out
    a, b = x.representative, y.representative
    if a.is_trivial or b.is_trivial:
        return out
    ab = algebraic_intersection_number(model, a, b, depth, method)
    if ab == 0:
        return out
    px, py = _partner(x, a), _partner(y, b)
    return out - PBWElement.monomial(px, py, coeff=k * ab)


def poisson_bracket(model: SurfaceModel, X: PBWElement, Y: PBWElement, k=0,
                    depth=None, method=None) -> PBWElement:
    """Bilinear biderivation extending :func:`deformed_bracket_basis`."""
    terms: list[tuple[Monomial, Fraction]] = []
    for m1, c1 in X:
        for m2, c2 in Y:
            for i, x in enumerate(m1):
                rest1 = m1[:i] + m1[i + 1:]
                for j, y in enumerate(m2):
                    rest2 = m2[:j] + m2[j + 1:]
                    br = _deformed_cached(model, x, y, Fraction(k), depth, method)
                    for m, c in br:
                        terms.append((sort_monomial(rest1 + rest2 + m), c1 * c2 * c))
    return PBWElement(terms)


@lru_cache(maxsize=100_000)
def _deformed_cached(model, x, y, k, depth, method):
    return deformed_bracket_basis(model, x, y, k, depth, method)


# ------------------------------------------------------ enveloping algebra

@lru_cache(maxsize=100_000)
def _lie_bracket_hat(model: SurfaceModel, x: Factor, y: Factor, depth, method) -> PBWElement:
    # through the directed model: lift both factors, Goldman bracket, descend
    return _chain_to_pbw(twg_via_goldman(model, _as_chain(x), _as_chain(y), depth, method))


STRATEGIES = ("leftmost", "rightmost", "random")


def uea_normal_form(model: SurfaceModel, factors: Sequence[Factor] | PBWWord,
                    strategy: str = "leftmost", seed: int | None = None,
                    depth=None, method=None) -> PBWElement:
    """PBW normal form of an ordered product of basis factors.

    ``factors`` is a sequence of factors (one word, coefficient 1) or a
    :class:`PBWWord` combination.  Out-of-order neighbours ``x y`` with
    ``x > y`` are rewritten as ``y x + [x, y]``.  ``strategy`` picks which
    inversion to resolve first; the result does not depend on it.
    """
    if strategy not in STRATEGIES:
        raise DomainError(f"unknown rewrite strategy {strategy!r}")
    rng = random.Random(seed)
    if isinstance(factors, PBWWord):
        work = dict(factors.terms)
    else:
        work = {tuple(_check_factor(f) for f in factors): Fraction(1)}
    done: dict[Monomial, Fraction] = {}
    while work:
        # process highest degree first so lower-degree bracket terms merge
        word = max(work, key=lambda w: (len(w), tuple(factor_key(f) for f in w)))
        c = work.pop(word)
        if c == 0:
            continue
        inv = [i for i in range(len(word) - 1) if factor_key(word[i]) > factor_key(word[i + 1])]
        if not inv:
            done[word] = done.get(word, 0) + c
            continue
        if strategy == "leftmost":
            i = inv[0]
        elif strategy == "rightmost":
            i = inv[-1]
        else:
            i = rng.choice(inv)
        x, y = word[i], word[i + 1]
        swapped = word[:i] + (y, x) + word[i + 2:]
        work[swapped] = work.get(swapped, 0) + c
        for m, cb in _lie_bracket_hat(model, x, y, depth, method):
            (f,) = m
            w2 = word[:i] + (f,) + word[i + 2:]
            work[w2] = work.get(w2, 0) + c * cb
    return PBWElement(done.items())


class PBWWord:
    """Combination of ordered (not necessarily sorted) factor words, i.e. an
    element of the free algebra before normal ordering."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[tuple, object]]):
        acc: dict[tuple, Fraction] = {}
        for w, c in terms:
            acc[tuple(w)] = acc.get(tuple(w), 0) + Fraction(c)
        self.terms = tuple((w, c) for w, c in acc.items() if c != 0)

    @classmethod
    def from_pbw(cls, x: PBWElement) -> "PBWWord":
        return cls(iter(x))

    def __mul__(self, other: "PBWWord") -> "PBWWord":
        return PBWWord((w1 + w2, c1 * c2) for w1, c1 in self.terms for w2, c2 in other.terms)


def uea_multiply(model: SurfaceModel, X: PBWElement, Y: PBWElement,
                 strategy: str = "leftmost", seed: int | None = None,
                 depth=None, method=None) -> PBWElement:
    """Product in the enveloping algebra of two normal-ordered elements."""
    return uea_normal_form(model, PBWWord.from_pbw(X) * PBWWord.from_pbw(Y),
                           strategy, seed, depth, method)


def uea_commutator(model: SurfaceModel, x: Factor, y: Factor, depth=None, method=None) -> PBWElement:
    """``nf(x y) - nf(y x)``; equals the degree-one bracket ``[x, y]``."""
    return (uea_normal_form(model, (x, y), depth=depth, method=method) -
            uea_normal_form(model, (y, x), depth=depth, method=method))

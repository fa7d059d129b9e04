"""Goldman bracket, loop products at a crossing, and the four TWG brackets.

At an intersection point ``P`` with conjugator ``g`` and sign ``eps`` the
loop product of ``alpha`` and ``beta`` is the class of
``alpha * g beta g^-1``.  The two sign-normalised products are

* ``star_zero``: ``alpha * (g beta g^-1)^eps`` (crossing made positive),
* ``star_infty``: ``alpha * (g beta g^-1)^-eps`` (crossing made negative).

The TWG brackets are written directly in terms of these and are checked
against the Goldman bracket through :func:`lift_tilde`, :func:`lift_under`
and the halved quotient maps.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .chains import (ChainHat, ChainTilde, ChainUnder, descend_tilde, descend_under,
                     lift_tilde, lift_under)
from .errors import ForeignPointError, RankMismatchError
from .intersections import IntersectionPoint, enumerate_intersections
from .surface import SurfaceModel
from .words import CyclicWord, cyclically_reduce, inverse_word, multiply


def _star(alpha: CyclicWord, P: IntersectionPoint, exponent: int) -> CyclicWord:
    g = P.conjugator
    b = P.beta.letters if exponent > 0 else inverse_word(P.beta.letters)
    return cyclically_reduce(multiply(alpha.letters, g, b, inverse_word(g)), alpha.rank)


def _check_point(model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord,
                 P: IntersectionPoint, depth=None, method=None) -> None:
    if P.alpha != alpha or P.beta != beta:
        raise ForeignPointError(
            f"intersection point belongs to ({P.alpha}, {P.beta}), not ({alpha}, {beta})")
    pts = enumerate_intersections(model, alpha, beta, depth, method)
    if not any(q.conjugator == P.conjugator for q in pts):
        raise ForeignPointError(f"no intersection point of ({alpha}, {beta}) has that conjugator")


def star_zero(model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord,
              P: IntersectionPoint, depth=None, method=None) -> CyclicWord:
    _check_point(model, alpha, beta, P, depth, method)
    return _star(alpha, P, P.sign)


def star_infty(model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord,
               P: IntersectionPoint, depth=None, method=None) -> CyclicWord:
    _check_point(model, alpha, beta, P, depth, method)
    return _star(alpha, P, -P.sign)


def _points(model, alpha, beta, depth, method):
    if alpha.is_trivial or beta.is_trivial:
        return ()
    return enumerate_intersections(model, alpha, beta, depth, method).points


def _check_rank(model: SurfaceModel, *chains) -> None:
    for ch in chains:
        for k, _ in ch:
            w = k if isinstance(k, CyclicWord) else k.representative
            if w.rank != model.rank:
                raise RankMismatchError(f"class {w} has rank {w.rank}, model has rank {model.rank}")


# --------------------------------------------------------------- Goldman

@lru_cache(maxsize=100_000)
def goldman_basis(model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord,
                  depth=None, method=None) -> ChainHat:
    """``[alpha, beta]_G`` for two directed classes."""
    return ChainHat((_star(alpha, P, 1), P.sign) for P in _points(model, alpha, beta, depth, method))


def goldman_bracket(model: SurfaceModel, x: ChainHat, y: ChainHat,
                    depth=None, method=None) -> ChainHat:
    _check_rank(model, x, y)
    terms = []
    for a, ca in x:
        for b, cb in y:
            for w, c in goldman_basis(model, a, b, depth, method):
                terms.append((w, ca * cb * c))
    return ChainHat(terms)


# ------------------------------------------------------------------ TWG

@lru_cache(maxsize=100_000)
def _twg_basis(model: SurfaceModel, flavor: str, alpha: CyclicWord, beta: CyclicWord,
               depth, method):
    zero_inf = []
    for P in _points(model, alpha, beta, depth, method):
        zero_inf.append((_star(alpha, P, P.sign), _star(alpha, P, -P.sign), P.sign))
    if flavor == "tt":
        return ChainTilde([(z, 1) for z, _, _ in zero_inf] + [(i, -1) for _, i, _ in zero_inf])
    if flavor == "tu":
        return ChainUnder([(z, e) for z, _, e in zero_inf] + [(i, e) for _, i, e in zero_inf])
    if flavor == "ut":
        return ChainUnder([(z, 1) for z, _, _ in zero_inf] + [(i, -1) for _, i, _ in zero_inf])
    if flavor == "uu":
        return ChainTilde([(z, e) for z, _, e in zero_inf] + [(i, e) for _, i, e in zero_inf])
    raise ValueError(f"unknown flavor {flavor!r}")


def twg_basis_pair(model: SurfaceModel, flavor: str, alpha: CyclicWord, beta: CyclicWord,
                   depth=None, method=None):
    """TWG bracket of the basis elements with representatives ``alpha`` and
    ``beta``; ``flavor`` names the two tiers, e.g. ``"tu"``."""
    return _twg_basis(model, flavor, alpha, beta, depth, method)


def _twg(model, flavor, x, y, out_type, depth, method):
    _check_rank(model, x, y)
    terms = []
    for a, ca in x:
        for b, cb in y:
            for k, c in _twg_basis(model, flavor, a.representative, b.representative,
                                   depth, method):
                terms.append((k, ca * cb * c))
    return out_type(terms)


def twg_tilde_tilde(model: SurfaceModel, x: ChainTilde, y: ChainTilde,
                    depth=None, method=None) -> ChainTilde:
    """Sum over crossings of ``(a*b)_0 - (a*b)_inf`` as unoriented classes."""
    return _twg(model, "tt", x, y, ChainTilde, depth, method)


def twg_tilde_under(model: SurfaceModel, x: ChainTilde, y: ChainUnder,
                    depth=None, method=None) -> ChainUnder:
    """Sum over crossings of ``eps * ((a*b)_0 + (a*b)_inf)`` as twisted classes."""
    return _twg(model, "tu", x, y, ChainUnder, depth, method)


def twg_under_tilde(model: SurfaceModel, x: ChainUnder, y: ChainTilde,
                    depth=None, method=None) -> ChainUnder:
    """Sum over crossings of ``(a*b)_0 - (a*b)_inf`` as twisted classes."""
    return _twg(model, "ut", x, y, ChainUnder, depth, method)


def twg_under_under(model: SurfaceModel, x: ChainUnder, y: ChainUnder,
                    depth=None, method=None) -> ChainTilde:
    """Sum over crossings of ``eps * ((a*b)_0 + (a*b)_inf)`` as unoriented classes."""
    return _twg(model, "uu", x, y, ChainTilde, depth, method)


TWG = {
    "tt": twg_tilde_tilde,
    "tu": twg_tilde_under,
    "ut": twg_under_tilde,
    "uu": twg_under_under,
}


def twg_bracket(model: SurfaceModel, flavor: str, x, y, depth=None, method=None):
    try:
        fn = TWG[flavor]
    except KeyError:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of tt, tu, ut, uu") from None
    return fn(model, x, y, depth, method)


def lift(x):
    """Tilde chains lift to the even part, twisted chains to the odd part."""
    return lift_tilde(x) if isinstance(x, ChainTilde) else lift_under(x)


def twg_via_goldman(model: SurfaceModel, x, y, depth=None, method=None):
    """The TWG bracket of ``x`` and ``y`` computed through the Goldman
    bracket of their lifts; the result lies in the even part exactly when
    the two inputs have the same type."""
    g = goldman_bracket(model, lift(x), lift(y), depth, method)
    if isinstance(x, ChainTilde) == isinstance(y, ChainTilde):
        return descend_tilde(g)
    return descend_under(g)


def include_hat(x: ChainHat) -> tuple[ChainTilde, ChainUnder]:
    """Split a directed chain into its even and odd coordinates:
    ``w = (w~)/2 + (w_)/2`` after lifting."""
    half = Fraction(1, 2)
    return ChainTilde(((w, c * half) for w, c in x)), ChainUnder(((w, c * half) for w, c in x))

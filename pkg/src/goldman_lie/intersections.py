"""Transversal intersection points of closed geodesics.

A point where the geodesics of ``alpha`` and ``beta`` cross on the surface
lifts to a pair of crossing axes in the half plane, ``A_alpha`` and
``g A_beta``, and the lift is unique up to the double coset
``<alpha> g <beta>``.  Enumerating intersection points therefore means
listing double cosets whose axes cross.

Two enumeration methods share one exact double-coset normal form:

``tree``
    For Schottky-certified models the Cayley tree embeds equivariantly in
    the plane, so two axes can only cross if their tree lines share a
    vertex.  Up to translation such a vertex is ``u = g x`` with ``u`` a
    prefix of ``alpha`` and ``x`` a prefix of ``beta``, which leaves
    ``|alpha| * |beta|`` candidates ``g = u x^-1``.  Complete, no depth.
``ball``
    Brute force over every reduced word of length at most ``depth``,
    vectorised with numpy, accepted only if depth ``L - 1`` gives the same
    answer.  Works for any model and doubles as the oracle for ``tree``.

Powers are reduced to primitive roots: a crossing of the roots with
conjugator ``g`` yields ``m * n`` crossings of ``r^m`` and ``s^n`` with
conjugators ``r^i g s^j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from . import precise
from .errors import DomainError, UnstableEnumerationError
from .moebius import INF, Axis, apply, axis, crossing_frame, inverse, normalizer
from .surface import SurfaceModel, represent_word, word_ball
from .words import (CyclicWord, Word, exponent_sums, inverse_word, multiply, root,
                    format_word, word_key, word_power, are_commensurable)

DEFAULT_DEPTH = 8
POSITION_TOL = 1e-7


class CrossingData(NamedTuple):
    point: complex
    angle: float
    sign: int


@dataclass(frozen=True)
class IntersectionPoint:
    """One transversal crossing of ``alpha`` and ``beta``.

    ``conjugator`` is the canonical representative ``g`` of the double
    coset: the crossing is ``A_alpha`` meeting ``g A_beta``.  ``angle`` is
    the counterclockwise angle from the line of ``beta`` to the line of
    ``alpha``, in (0, pi); ``sign`` is +1 when (forward alpha, forward beta)
    is a positive frame.
    """

    alpha: CyclicWord
    beta: CyclicWord
    conjugator: Word
    position: float
    angle: float
    sign: int
    point: complex

    def as_dict(self) -> dict:
        return {
            "conjugator": format_word(self.conjugator),
            "position": self.position,
            "angle": self.angle,
            "sign": self.sign,
        }


@dataclass(frozen=True)
class Intersections:
    """Result of :func:`enumerate_intersections`.

    ``coinciding_axes`` is set when ``alpha`` and ``beta`` are powers of one
    class up to orientation; the point list is then empty because no
    transversal representative exists.
    """

    points: tuple[IntersectionPoint, ...]
    coinciding_axes: bool = False
    method: str = "tree"
    depth: int | None = None
    # pairs of distinct double cosets sharing a point of alpha (beta passes
    # through that point twice); each pair of branches still counts once
    shared_positions: int = 0

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[IntersectionPoint]:
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]


# ------------------------------------------------------------ axis tests

def _circle_coord(x: float) -> float:
    # monotone map of the extended line onto [-pi/2, pi/2], with inf at pi/2
    return math.pi / 2 if x == INF else math.atan(x)


def axes_cross(first: Axis, second: Axis) -> bool:
    """True iff the endpoint pairs interleave on the boundary circle."""
    p, q = sorted((_circle_coord(first.repelling), _circle_coord(first.attracting)))
    x, y = _circle_coord(second.repelling), _circle_coord(second.attracting)
    if len({p, q, x, y}) < 4:
        return False
    return (p < x < q) != (p < y < q)


def _angle_sign(tangent: tuple[float, float]) -> tuple[float, int]:
    tx, ty = tangent
    # the first axis points straight up in the normalised frame
    sign = 1 if tx < 0 else -1
    psi = math.atan2(ty, tx)
    theta = (math.pi / 2 - psi) % math.pi
    return theta, sign


def crossing_data(first: Axis, second: Axis) -> CrossingData:
    """Crossing point, angle from ``second`` to ``first`` and sign.

    The angle is between lines, so reversing either axis leaves it fixed
    and flips the sign.
    """
    frame = crossing_frame(first, second)
    if frame is None or not axes_cross(first, second):
        raise DomainError("axes do not cross transversally")
    theta, sign = _angle_sign(frame.tangent)
    point = apply(inverse(frame.normalizer), complex(0.0, frame.height))
    return CrossingData(point, theta, sign)


# ------------------------------------------------- double-coset normal form

def _ray(word: Word, n: int) -> Word:
    if n <= 0:
        return ()
    reps = n // len(word) + 1
    return (word * reps)[:n]


def _line_vertex(word: Word, inv: Word, t: int) -> Word:
    return _ray(word, t) if t >= 0 else _ray(inv, -t)


def _line_index(v: Word, word: Word, inv: Word) -> int | None:
    n = len(v)
    if v == _ray(word, n):
        return n
    if v == _ray(inv, n):
        return -n
    return None


def shared_vertices(C: Word, D: Word, g: Word) -> list[tuple[int, int]]:
    """Pairs ``(t, s)`` with ``P_C(t) = g P_D(s)`` on the Cayley tree, where
    ``P_W(t)`` walks the axis of the cyclically reduced word ``W``."""
    Ci, Di = inverse_word(C), inverse_word(D)
    M = len(g) + 2 * (len(C) + len(D)) + 2
    out = []
    for s in range(-M, M + 1):
        t = _line_index(multiply(g, _line_vertex(D, Di, s)), C, Ci)
        if t is not None:
            out.append((t, s))
    return out


def brute_force_coset_rep(C: Word, D: Word, g: Word, window: int | None = None) -> Word:
    """Shortlex-least ``C^k g D^l`` over a window of exponents."""
    if window is None:
        window = len(g) + len(C) + len(D) + 2
    best = None
    for k in range(-window, window + 1):
        left = multiply(word_power(C, k), g)
        for l in range(-window, window + 1):
            w = multiply(left, word_power(D, l))
            if best is None or word_key(w) < word_key(best):
                best = w
    return best


@lru_cache(maxsize=100_000)
def canonical_coset_rep(C: Word, D: Word, g: Word) -> Word:
    """Exact normal form of the double coset ``<C> g <D>``.

    When the tree lines of ``C`` and ``g D g^-1`` meet, the representative
    is ``P_C(t0) P_D(s0)^-1`` where ``t0`` is the first shared vertex
    reduced into ``[0, |C|)`` and ``s0`` its index on the other line
    reduced into ``[0, |D|)``.  Otherwise fall back to the shortlex-least
    element of a search window.
    """
    shared = shared_vertices(C, D, g)
    if not shared:
        return brute_force_coset_rep(C, D, g)
    t_lo, s_lo = min(shared)
    t0 = t_lo % len(C)
    s0 = s_lo % len(D)
    return multiply(_ray(C, t0), inverse_word(_ray(D, s0)))


# ------------------------------------------------------------ enumeration

def _root_axes(model: SurfaceModel, r: Word, s: Word) -> tuple[Axis, Axis]:
    return axis(represent_word(model, r)), axis(represent_word(model, s))


def _crossing_for(model: SurfaceModel, axis_r: Axis, axis_s: Axis, g: Word):
    G = represent_word(model, g)
    moved = Axis(apply(G, axis_s.repelling), apply(G, axis_s.attracting))
    if not axes_cross(axis_r, moved):
        return None
    frame = crossing_frame(axis_r, moved)
    if frame is None:
        return None
    return frame


def _tree_candidates(r: Word, s: Word) -> set[Word]:
    return {multiply(r[:i], inverse_word(s[:j])) for i in range(len(r)) for j in range(len(s))}


def _ball_crossings(model: SurfaceModel, axis_r: Axis, axis_s: Axis, depth: int) -> np.ndarray:
    """Indices into the word ball whose image carries ``axis_s`` across ``axis_r``."""
    ball = word_ball(model, depth)
    N = normalizer(axis_r)
    m = ball.matrices
    a = N.a * m[:, 0] + N.b * m[:, 2]
    b = N.a * m[:, 1] + N.b * m[:, 3]
    c = N.c * m[:, 0] + N.d * m[:, 2]
    d = N.c * m[:, 1] + N.d * m[:, 3]

    def num_den(p):
        if p == INF:
            return a, c
        return a * p + b, c * p + d

    nx, dx = num_den(axis_s.repelling)
    ny, dy = num_den(axis_s.attracting)
    # the image endpoints x = nx/dx and y = ny/dy straddle 0 (and so infinity)
    with np.errstate(over="ignore", invalid="ignore"):
        prod = (nx * dx) * (ny * dy)
    return np.nonzero(prod < 0)[0]


def _root_cosets(model: SurfaceModel, r: Word, s: Word, method: str,
                 depth: int) -> dict[Word, object]:
    axis_r, axis_s = _root_axes(model, r, s)
    found: dict[Word, object] = {}
    if method == "tree":
        for g in sorted(_tree_candidates(r, s), key=word_key):
            rep = canonical_coset_rep(r, s, g)
            if rep in found:
                continue
            frame = _crossing_for(model, axis_r, axis_s, rep)
            if frame is not None:
                found[rep] = frame
        return found
    if method != "ball":
        raise DomainError(f"unknown enumeration method {method!r}")
    if depth < 1:
        raise DomainError("enumeration depth must be at least 1")
    ball = word_ball(model, depth)
    hits = _ball_crossings(model, axis_r, axis_s, depth)
    limit = ball.count_upto(depth - 1)
    short: set[Word] = set()
    for i in hits:
        rep = canonical_coset_rep(r, s, ball.word(int(i)))
        if i < limit:
            short.add(rep)
        if rep in found:
            continue
        frame = _crossing_for(model, axis_r, axis_s, rep)
        if frame is not None:
            found[rep] = frame
    if short != set(found):
        raise UnstableEnumerationError(
            f"unstable at depth {depth}: {len(found)} double cosets at depth {depth}, "
            f"{len(short)} at depth {depth - 1}", depth)
    return found


def default_method(model: SurfaceModel) -> str:
    return "tree" if model.certificate.schottky else "ball"


def enumerate_intersections(model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord,
                            depth: int | None = None, method: str | None = None,
                            strict: bool = False) -> Intersections:
    """All transversal intersection points of ``alpha`` and ``beta``, sorted
    by canonical conjugator.

    With ``strict`` a point of ``alpha`` met by two branches of ``beta``
    raises instead of being reported in ``shared_positions``.
    """
    if alpha.rank != model.rank or beta.rank != model.rank:
        from .errors import RankMismatchError
        raise RankMismatchError("word rank does not match the model")
    if alpha.is_trivial or beta.is_trivial:
        raise DomainError("intersection points need nontrivial classes")
    method = method or default_method(model)
    depth = DEFAULT_DEPTH if depth is None else int(depth)
    if are_commensurable(alpha, beta):
        return Intersections((), True, method, depth if method == "ball" else None)
    out = _enumerate_cached(model, alpha, beta, depth, method)
    if strict and out.shared_positions:
        raise DomainError(
            f"{out.shared_positions} pair(s) of intersection points share a position along "
            f"{alpha} (triple point); refusing to merge them")
    return out


@lru_cache(maxsize=50_000)
def _enumerate_cached(model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord,
                      depth: int, method: str) -> Intersections:
    (ra, m), (rb, n) = root(alpha), root(beta)
    r, s = ra.letters, rb.letters
    cosets = _root_cosets(model, r, s, method, depth)
    ell_r = 2.0 * math.acosh(abs(represent_word(model, r).trace) / 2.0)

    base = []
    for g, frame in cosets.items():
        fine = precise.crossing_frame(model, r, s, g)
        if fine is None:
            raise DomainError(f"crossing of {ra} with {format_word(g)}-translate of {rb} "
                              "is not confirmed at extended precision")
        theta, sign = _angle_sign(fine.tangent)
        pos = fine.log_height
        ell_r = fine.translation_length
        point = apply(inverse(frame.normalizer), complex(0.0, frame.height))
        base.append((g, pos, theta, sign, point))
    shared = count_shared_positions([b[1] for b in base], ell_r)

    points = []
    for g, pos, theta, sign, point in base:
        for i in range(m):
            ri = word_power(r, i)
            for j in range(n):
                h = multiply(ri, g, word_power(s, j))
                points.append(IntersectionPoint(alpha, beta, h, pos + i * ell_r,
                                                theta, sign, point))
    points.sort(key=lambda p: word_key(p.conjugator))
    return Intersections(tuple(points), False, method, depth if method == "ball" else None, shared)


def count_shared_positions(positions: Sequence[float], period: float,
                           tol: float = POSITION_TOL) -> int:
    """Number of pairs of positions within ``tol`` of each other on a circle
    of length ``period``."""
    n = 0
    for i, x in enumerate(positions):
        for y in positions[i + 1:]:
            gap = (y - x) % period
            if min(gap, period - gap) < tol:
                n += 1
    return n


def geometric_intersection_number(model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord,
                                  depth: int | None = None, method: str | None = None) -> int:
    return len(enumerate_intersections(model, alpha, beta, depth, method))


def algebraic_intersection_number(model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord,
                                  depth: int | None = None, method: str | None = None) -> int:
    return sum(p.sign for p in enumerate_intersections(model, alpha, beta, depth, method))


def homological_intersection(model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord) -> int:
    """Homological intersection on a one-holed torus: ``sigma * (p1 q2 - p2 q1)``
    with ``sigma`` the model's value of ``(a, b)``."""
    if model.topology != (1, 1):
        raise DomainError("homological formula is only wired up for the one-holed torus")
    (p1, p2), (q1, q2) = exponent_sums(alpha), exponent_sums(beta)
    sigma = _torus_orientation(model)
    return sigma * (p1 * q2 - p2 * q1)


@lru_cache(maxsize=64)
def _torus_orientation(model: SurfaceModel) -> int:
    from .words import parse_class
    pts = enumerate_intersections(model, parse_class("a", 2), parse_class("b", 2))
    if len(pts) != 1:
        raise DomainError("generators of the torus model do not meet exactly once")
    return pts[0].sign

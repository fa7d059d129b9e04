"""Extended-precision crossing frames.

Crossing decisions are made in double precision, but the angle at a
shallow crossing is badly conditioned there: an endpoint of the moved axis
sits close to an endpoint of the fixed one and the normalising map cancels
most digits.  Once a crossing is known, its frame is recomputed here with
mpmath from the generator matrices (renormalised to determinant exactly 1
at working precision).
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

import mpmath
from mpmath import mp

from .surface import SurfaceModel

DPS = 40
_INF = None  # boundary point at infinity


class PreciseFrame(NamedTuple):
    height: float
    tangent: tuple[float, float]
    log_height: float
    translation_length: float


@lru_cache(maxsize=64)
def _generators(model: SurfaceModel, dps: int):
    with mp.workdps(dps):
        out = {}
        for k, g in enumerate(model.generators, start=1):
            a, b, c, d = (mpmath.mpf(x) for x in (g.a, g.b, g.c, g.d))
            s = 1 / mpmath.sqrt(a * d - b * c)
            a, b, c, d = a * s, b * s, c * s, d * s
            out[k] = (a, b, c, d)
            out[-k] = (d, -b, -c, a)
        return out


def word_matrix(model: SurfaceModel, word, dps: int = DPS):
    gens = _generators(model, dps)
    with mp.workdps(dps):
        a, b, c, d = mpmath.mpf(1), mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(1)
        for x in word:
            e, f, g, h = gens[x]
            a, b, c, d = a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h
        return a, b, c, d


def word_trace(model: SurfaceModel, word, dps: int = DPS) -> float:
    M = word_matrix(model, word, dps)
    with mp.workdps(dps):
        return float(M[0] + M[3])


def _axis(M):
    a, b, c, d = M
    if c == 0:
        finite = b / (d - a)
        return (finite, _INF) if abs(a) > abs(d) else (_INF, finite)
    disc = mpmath.sqrt((a - d) ** 2 + 4 * b * c)
    z1 = (a - d + disc) / (2 * c)
    z2 = (a - d - disc) / (2 * c)
    if abs(c * z1 + d) > abs(c * z2 + d):
        return z2, z1
    return z1, z2


def _apply(M, z):
    a, b, c, d = M
    if z is _INF:
        return _INF if c == 0 else a / c
    den = c * z + d
    return _INF if den == 0 else (a * z + b) / den


def _normalizer(p, q):
    one, zero = mpmath.mpf(1), mpmath.mpf(0)
    if q is _INF:
        return one, -p, zero, one
    if p is _INF:
        return zero, -one, one, -q
    sigma = one if p > q else -one
    return sigma, -sigma * p, one, -q


def crossing_frame(model: SurfaceModel, r, s, g, dps: int = DPS) -> PreciseFrame | None:
    """Frame of ``A_r`` crossing ``g A_s`` for words ``r``, ``s``, ``g``."""
    with mp.workdps(dps):
        R = word_matrix(model, r, dps)
        S = word_matrix(model, s, dps)
        G = word_matrix(model, g, dps)
        pr, qr = _axis(R)
        ps, qs = _axis(S)
        N = _normalizer(pr, qr)
        x = _apply(N, _apply(G, ps))
        y = _apply(N, _apply(G, qs))
        if x is _INF or y is _INF or not x * y < 0:
            return None
        h = mpmath.sqrt(-x * y)
        c = (x + y) / 2
        norm = mpmath.sqrt(h * h + c * c)
        t = (h / norm, c / norm) if x < y else (-h / norm, -c / norm)
        ell = 2 * mpmath.acosh(abs(R[0] + R[3]) / 2)
        return PreciseFrame(float(h), (float(t[0]), float(t[1])),
                            float(mpmath.log(h) % ell), float(ell))


def cosh_product_residual(model: SurfaceModel, g, h, relative: bool = False,
                          dps: int = DPS) -> float:
    """Residual of the cosh product law for words ``g`` and ``h``
    whose axes cross, evaluated at working precision."""
    frame = crossing_frame(model, g, h, (), dps)
    if frame is None:
        return math.nan
    with mp.workdps(dps):
        G, H = word_matrix(model, g, dps), word_matrix(model, h, dps)
        GH = word_matrix(model, tuple(g) + tuple(h), dps)
        a = mpmath.acosh(abs(G[0] + G[3]) / 2)
        b = mpmath.acosh(abs(H[0] + H[3]) / 2)
        lhs = abs(GH[0] + GH[3]) / 2
        rhs = mpmath.cosh(a) * mpmath.cosh(b) + mpmath.sinh(a) * mpmath.sinh(b) * frame.tangent[1]
        return float(abs(lhs - rhs) / (max(1, abs(rhs)) if relative else 1))

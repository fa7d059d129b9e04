"""Isometries of the upper half plane as unit-determinant real 2x2 matrices.

Matrices are taken up to global sign, so every predicate here is invariant
under ``g -> -g``.  Boundary points of the half plane are floats, with
``math.inf`` as the tag for the point at infinity; the ``c == 0`` cases are
branched on explicitly rather than divided through.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError

INF = math.inf
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Isometry:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if not det > 0:
            raise DomainError(f"matrix has non-positive determinant {det!r}")
        if det != 1.0:
            s = 1.0 / math.sqrt(det)
            object.__setattr__(self, "a", self.a * s)
            object.__setattr__(self, "b", self.b * s)
            object.__setattr__(self, "c", self.c * s)
            object.__setattr__(self, "d", self.d * s)

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_rows(cls, rows) -> "Isometry":
        (a, b), (c, d) = rows
        return cls(float(a), float(b), float(c), float(d))

    def rows(self) -> list[list[float]]:
        return [[self.a, self.b], [self.c, self.d]]

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> float:
        return self.a + self.d

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return compose(self, other)

    def __call__(self, z):
        return apply(self, z)


def compose(g: Isometry, h: Isometry) -> Isometry:
    """Matrix product ``g h`` (apply ``h`` first)."""
    return Isometry(g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
                    g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d)


def inverse(g: Isometry) -> Isometry:
    return Isometry(g.d, -g.b, -g.c, g.a)


def apply(g: Isometry, z):
    """Action on a complex point of the half plane or on a boundary point."""
    if isinstance(z, complex):
        return (g.a * z + g.b) / (g.c * z + g.d)
    if z == INF:
        return INF if g.c == 0 else g.a / g.c
    den = g.c * z + g.d
    if den == 0:
        return INF
    return (g.a * z + g.b) / den


def close_to(g: Isometry, h: Isometry, tol: float = 1e-10) -> bool:
    """Equality in PSL(2,R): entries agree up to a global sign."""
    plus = max(abs(g.a - h.a), abs(g.b - h.b), abs(g.c - h.c), abs(g.d - h.d))
    minus = max(abs(g.a + h.a), abs(g.b + h.b), abs(g.c + h.c), abs(g.d + h.d))
    return min(plus, minus) <= tol


class Kind(str, enum.Enum):
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    IDENTITY = "identity"


def classify(g: Isometry, tol: float = DEFAULT_TOL) -> Kind:
    t = abs(g.trace)
    if t > 2 + tol:
        return Kind.HYPERBOLIC
    if t < 2 - tol:
        return Kind.ELLIPTIC
    if close_to(g, Isometry.identity(), tol):
        return Kind.IDENTITY
    return Kind.PARABOLIC


def _require_hyperbolic(g: Isometry, tol: float) -> None:
    kind = classify(g, tol)
    if kind is not Kind.HYPERBOLIC:
        raise DomainError(f"isometry is {kind.value}, not hyperbolic (trace {g.trace!r})")


def translation_length(g: Isometry, tol: float = DEFAULT_TOL) -> float:
    _require_hyperbolic(g, tol)
    return 2.0 * math.acosh(abs(g.trace) / 2.0)


def hyperbolic_distance(z: complex, w: complex) -> float:
    return 2.0 * math.asinh(abs(z - w) / (2.0 * math.sqrt(z.imag * w.imag)))


@dataclass(frozen=True)
class Axis:
    """Oriented geodesic from ``repelling`` to ``attracting`` (boundary points)."""

    repelling: float
    attracting: float

    def __post_init__(self):
        if self.repelling == self.attracting:
            raise DomainError("axis endpoints coincide")

    def reversed(self) -> "Axis":
        return Axis(self.attracting, self.repelling)


def axis(g: Isometry, tol: float = DEFAULT_TOL) -> Axis:
    """Axis of a hyperbolic isometry, oriented towards its attracting point.

    The attracting fixed point is the one where ``|g'(z)| = 1/(cz+d)^2 < 1``.
    """
    _require_hyperbolic(g, tol)
    a, b, c, d = g.a, g.b, g.c, g.d
    if c == 0:
        # z -> (a/d) z + b/d; infinity attracts when |a/d| > 1
        finite = b / (d - a) + 0.0
        return Axis(finite, INF) if abs(a) > abs(d) else Axis(INF, finite)
    disc = math.sqrt((a - d) ** 2 + 4.0 * b * c)
    # roots of c z^2 + (d - a) z - b = 0, numerically stable pair
    s = d - a
    q = -0.5 * (s + math.copysign(disc, s if s != 0 else 1.0))
    z1 = q / c
    z2 = -b / q if q != 0 else (a - d) / (2 * c)
    # |c z + d| > 1 at the attracting point
    if abs(c * z1 + d) > abs(c * z2 + d):
        return Axis(z2, z1)
    return Axis(z1, z2)


def normalizer(ax: Axis) -> Isometry:
    """Orientation-preserving isometry sending ``ax`` to the upward
    imaginary axis (repelling point to 0, attracting point to infinity)."""
    p, q = ax.repelling, ax.attracting
    if q == INF:
        return Isometry(1.0, -p, 0.0, 1.0)
    if p == INF:
        return Isometry(0.0, -1.0, 1.0, -q)
    sigma = 1.0 if p > q else -1.0
    return Isometry(sigma, -sigma * p, 1.0, -q)


@dataclass(frozen=True)
class CrossingFrame:
    """Two crossing axes seen after normalising the first to the imaginary
    axis: the crossing is at ``i * height`` and the second axis has unit
    forward tangent ``tangent`` there."""

    height: float
    tangent: tuple[float, float]
    normalizer: Isometry


def crossing_frame(first: Axis, second: Axis, tol: float = 0.0) -> CrossingFrame | None:
    """Return the crossing frame, or ``None`` when the axes do not cross
    transversally (disjoint, asymptotic or equal).

    ``tol`` is a relative margin: endpoints of ``second`` that land within it
    of 0 or infinity in the normalised picture count as not crossing.
    """
    m = normalizer(first)
    x = apply(m, second.repelling)
    y = apply(m, second.attracting)
    if x == INF or y == INF or not x * y < 0:
        return None
    if tol and min(abs(x), abs(y)) <= tol * max(abs(x), abs(y)):
        return None
    h = math.sqrt(-x * y)
    c = 0.5 * (x + y)
    norm = math.hypot(h, c)
    tangent = (h / norm, c / norm) if x < y else (-h / norm, -c / norm)
    return CrossingFrame(h, tangent, m)


def forward_angle(first: Axis, second: Axis) -> float:
    """Angle in (0, pi) between the forward directions of crossing axes."""
    frame = crossing_frame(first, second)
    if frame is None:
        raise DomainError("axes do not cross")
    return math.acos(max(-1.0, min(1.0, frame.tangent[1])))


def check_cosh_product(g: Isometry, h: Isometry, tol: float = DEFAULT_TOL,
                       relative: bool = False) -> float:
    """Residual of the product law for hyperbolics with crossing axes::

        cosh(t_gh/2) = cosh(t_g/2) cosh(t_h/2) + sinh(t_g/2) sinh(t_h/2) cos(theta)

    where ``theta`` is the angle between the forward directions.  With
    ``relative`` the residual is divided by ``max(1, rhs)``, which keeps
    long words from being penalised for the size of their traces.
    """
    ag, ah = axis(g, tol), axis(h, tol)
    frame = crossing_frame(ag, ah)
    if frame is None:
        raise DomainError("axes are disjoint, asymptotic or equal")
    cos_theta = frame.tangent[1]
    tg, th = translation_length(g, tol) / 2, translation_length(h, tol) / 2
    lhs = abs(compose(g, h).trace) / 2.0
    rhs = math.cosh(tg) * math.cosh(th) + math.sinh(tg) * math.sinh(th) * cos_theta
    return abs(lhs - rhs) / (max(1.0, abs(rhs)) if relative else 1.0)

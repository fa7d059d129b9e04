"""Hyperbolic surfaces with free fundamental group.

A :class:`SurfaceModel` is a representation of the free group of rank
``rank`` into PSL(2,R) together with topology metadata and the outcome of a
discreteness certificate.  Two built-in families are provided:

* :func:`one_holed_torus` -- ``A = diag(lam, 1/lam)`` with ``tr A = u`` and a
  fixed ``B = [[2,1],[3,2]]``; the parameter ``u`` is the metric knob.
* :func:`pants` -- a Schottky pair of hyperbolics with disjoint axes.  The
  annihilator results do not cover this topology (``excluded_topology``);
  it is kept as a counterexample.

Discreteness is certified heuristically by scanning every nontrivial
reduced word up to length ``L_cert`` for a hyperbolic image of translation
length at least ``delta``.  When the model also carries ping-pong intervals
that pass :func:`verify_schottky` the group is Schottky and the faster,
complete tree-candidate enumeration of intersection points is available.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import CertificateError, DomainError, RankMismatchError
from .moebius import INF, Isometry, apply
from .words import (CyclicWord, Word, format_word, letter_key,
                    parse_class, parse_word)

DEFAULT_L_CERT = 6
DEFAULT_DELTA = 0.05
# tr[A,B] = 14 - 3u^2 for the torus family, so the boundary is hyperbolic iff u > 4/sqrt(3)
TORUS_U_MIN = 4.0 / math.sqrt(3.0)


@dataclass(frozen=True)
class Certificate:
    passed: bool
    L_cert: int
    delta: float
    words_checked: int
    min_translation_length: float
    shortest_word: str
    schottky: bool = False

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "L_cert": self.L_cert,
            "delta": self.delta,
            "words_checked": self.words_checked,
            "min_translation_length": self.min_translation_length,
            "shortest_word": self.shortest_word,
            "schottky": self.schottky,
        }


@dataclass(frozen=True)
class SurfaceModel:
    rank: int
    generators: tuple[Isometry, ...]
    topology: tuple[int, int]
    family: str
    family_parameter: float | None
    certificate: Certificate
    peripheral: tuple[CyclicWord, ...] = ()
    simple_classes: tuple[CyclicWord, ...] = ()
    excluded_topology: bool = False
    # letter -> (start, end) arc on the boundary circle, read counterclockwise
    schottky_intervals: tuple[tuple[int, float, float], ...] | None = field(default=None, repr=False)

    @property
    def euler_characteristic(self) -> int:
        genus, boundary = self.topology
        return 2 - 2 * genus - boundary

    @property
    def label(self) -> str:
        if self.family == "torus1":
            return f"torus1:u={self.family_parameter:g}"
        if self.family == "pants":
            return f"pants:s={self.family_parameter:g}"
        return self.family

    def word(self, text: str) -> CyclicWord:
        """Parse a class in this model's rank."""
        return parse_class(text, self.rank)

    def generator_image(self, letter: int) -> Isometry:
        g = self.generators[abs(letter) - 1]
        return g if letter > 0 else Isometry(g.d, -g.b, -g.c, g.a)

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "family": self.family,
            "family_parameter": self.family_parameter,
            "rank": self.rank,
            "topology": {"genus": self.topology[0], "boundary_count": self.topology[1]},
            "euler_characteristic": self.euler_characteristic,
            "excluded_topology": self.excluded_topology,
            "generators": [g.rows() for g in self.generators],
            "peripheral": [str(w) for w in self.peripheral],
            "simple_classes": [str(w) for w in self.simple_classes],
            "certificate": self.certificate.as_dict(),
        }


def _check_word_rank(model: SurfaceModel, w: CyclicWord) -> None:
    if w.rank != model.rank:
        raise RankMismatchError(f"word of rank {w.rank} used with a rank-{model.rank} model")


def represent_word(model: SurfaceModel, word: Sequence[int]) -> Isometry:
    """Image of a (not necessarily cyclic) word: product along the word."""
    return _represent_cached(model, tuple(word))


@lru_cache(maxsize=200_000)
def _represent_cached(model: SurfaceModel, word: Word) -> Isometry:
    if not word:
        return Isometry.identity()
    if len(word) == 1:
        return model.generator_image(word[0])
    head = _represent_cached(model, word[:-1])
    g = model.generator_image(word[-1])
    return Isometry(head.a * g.a + head.b * g.c, head.a * g.b + head.b * g.d,
                    head.c * g.a + head.d * g.c, head.c * g.b + head.d * g.d)


def represent(model: SurfaceModel, w: CyclicWord) -> Isometry:
    _check_word_rank(model, w)
    return represent_word(model, w.letters)


def geodesic_length(model: SurfaceModel, w: CyclicWord) -> float:
    """Length of the closed geodesic in the class ``w``.

    The trace is taken from an extended-precision product: for long words
    the double-precision entries grow far beyond the trace and cancel.
    """
    _check_word_rank(model, w)
    if w.is_trivial:
        raise DomainError("the trivial class has no closed geodesic")
    from .precise import word_trace
    t = abs(word_trace(model, w.letters))
    if not t > 2.0 + 1e-9:
        raise DomainError(f"class {w} is not hyperbolic in this model (trace {t!r})")
    return 2.0 * math.acosh(t / 2.0)


# ------------------------------------------------------------------ balls

@dataclass(frozen=True)
class WordBall:
    """All reduced words up to ``depth`` in breadth-first order, with their
    images stored as rows ``(a, b, c, d)``."""

    depth: int
    parent: np.ndarray
    last: np.ndarray
    length: np.ndarray
    matrices: np.ndarray

    def __len__(self) -> int:
        return len(self.parent)

    def count_upto(self, n: int) -> int:
        return int(np.searchsorted(self.length, n, side="right"))

    def word(self, i: int) -> Word:
        out = []
        while i > 0:
            out.append(int(self.last[i]))
            i = int(self.parent[i])
        return tuple(reversed(out))


@lru_cache(maxsize=16)
def word_ball(model: SurfaceModel, depth: int) -> WordBall:
    letters = sorted([g for i in range(1, model.rank + 1) for g in (i, -i)], key=letter_key)
    gens = {x: model.generator_image(x) for x in letters}
    parents = [np.array([-1])]
    lasts = [np.array([0])]
    mats = [np.array([[1.0, 0.0, 0.0, 1.0]])]
    offset = 0
    for _ in range(depth):
        prev_last, prev_mat = lasts[-1], mats[-1]
        idx = np.arange(len(prev_last)) + offset
        offset += len(prev_last)
        new_p, new_l, new_m = [], [], []
        for x in letters:
            mask = prev_last != -x
            g = gens[x]
            m = prev_mat[mask]
            prod = np.empty_like(m)
            prod[:, 0] = m[:, 0] * g.a + m[:, 1] * g.c
            prod[:, 1] = m[:, 0] * g.b + m[:, 1] * g.d
            prod[:, 2] = m[:, 2] * g.a + m[:, 3] * g.c
            prod[:, 3] = m[:, 2] * g.b + m[:, 3] * g.d
            new_p.append(idx[mask])
            new_l.append(np.full(mask.sum(), x))
            new_m.append(prod)
        # keep breadth-first order sorted by parent then letter order
        p = np.concatenate(new_p)
        order = np.argsort(p, kind="stable")
        parents.append(p[order])
        lasts.append(np.concatenate(new_l)[order])
        mats.append(np.concatenate(new_m)[order])
    lengths = np.concatenate([np.full(len(l), n) for n, l in enumerate(lasts)])
    return WordBall(depth, np.concatenate(parents), np.concatenate(lasts).astype(np.int16),
                    lengths, np.concatenate(mats))


# ----------------------------------------------------------- certificates

def scan_certificate(model: SurfaceModel, L_cert: int = DEFAULT_L_CERT,
                     delta: float = DEFAULT_DELTA, schottky: bool = False) -> Certificate:
    """Purely-hyperbolic scan over all nontrivial reduced words of length
    at most ``L_cert``."""
    ball = word_ball(model, L_cert)
    m = ball.matrices[1:]
    tr = np.abs(m[:, 0] + m[:, 3])
    lengths = 2.0 * np.arccosh(np.maximum(tr, 2.0) / 2.0)
    # first (shortest) word attaining the minimum, up to rounding
    i = int(np.argmax(lengths <= lengths.min() * (1 + 1e-9)))
    ok = bool(np.all(tr > 2.0) and lengths[i] >= delta)
    return Certificate(ok, L_cert, delta, len(m), float(lengths[i]),
                       format_word(ball.word(i + 1)), schottky)


def _in_arc(x: float, arc: tuple[float, float], closed: bool = False, tol: float = 1e-12) -> bool:
    s, e = arc
    if x == INF:
        return s > e
    if s < e:
        return (s - tol <= x <= e + tol) if closed else (s < x < e)
    return (x >= s - tol or x <= e + tol) if closed else (x > s or x < e)


def verify_schottky(generators: Sequence[Isometry],
                    intervals: Mapping[int, tuple[float, float]], tol: float = 1e-9) -> bool:
    """Ping-pong check: the ``2 * rank`` arcs are pairwise disjoint and the
    generator for letter ``x`` maps the complement of arc ``-x`` onto arc
    ``x``."""
    letters = list(intervals)
    for i, x in enumerate(letters):
        for y in letters[i + 1:]:
            for p in intervals[x]:
                if _in_arc(p, intervals[y], closed=True, tol=tol):
                    return False
            for p in intervals[y]:
                if _in_arc(p, intervals[x], closed=True, tol=tol):
                    return False
    for k, g in enumerate(generators, start=1):
        for x, h in ((k, g), (-k, Isometry(g.d, -g.b, -g.c, g.a))):
            src, dst = intervals[-x], intervals[x]
            images = sorted(apply(h, p) for p in src)
            if any(v == INF for v in images):
                return False
            if not all(min(abs(v - q) for q in dst) <= tol * max(1.0, abs(v)) for v in images):
                return False
            # a point outside the source arc must land inside the target arc
            s, e = src
            probe = INF if s < e else 0.5 * (s + e)
            if probe != INF and _in_arc(probe, src):
                probe = e + 1.0
            if not _in_arc(apply(h, probe), dst):
                return False
    return True


def isometric_circle_intervals(generators: Sequence[Isometry]) -> dict[int, tuple[float, float]]:
    """Arcs cut out by isometric circles: letter ``x`` gets the disc of the
    inverse generator (where ``x`` sends the outside) and ``-x`` its own."""
    out = {}
    for k, g in enumerate(generators, start=1):
        if g.c == 0:
            raise DomainError(f"generator {k} fixes infinity; isometric circles undefined")
        r = 1.0 / abs(g.c)
        out[k] = (g.a / g.c - r, g.a / g.c + r)
        out[-k] = (-g.d / g.c - r, -g.d / g.c + r)
    return out


# ------------------------------------------------------------- builders

def _finish(model: SurfaceModel, L_cert: int, delta: float) -> SurfaceModel:
    intervals = dict((x, (s, e)) for x, s, e in model.schottky_intervals or ())
    schottky = bool(intervals) and verify_schottky(model.generators, intervals)
    cert = scan_certificate(model, L_cert, delta, schottky)
    if not cert.passed:
        raise CertificateError(
            f"certificate failed: word {cert.shortest_word!r} has translation length "
            f"{cert.min_translation_length:.3g} (need hyperbolic with length >= {delta})",
            cert.shortest_word)
    if intervals and not schottky:
        raise CertificateError("ping-pong intervals failed the Schottky check")
    return _replace(model, certificate=cert)


def _replace(model: SurfaceModel, **changes) -> SurfaceModel:
    from dataclasses import replace
    return replace(model, **changes)


_PENDING = Certificate(False, 0, 0.0, 0, 0.0, "")


def one_holed_torus(u: float = 4.0, L_cert: int = DEFAULT_L_CERT,
                    delta: float = DEFAULT_DELTA) -> SurfaceModel:
    """One-holed torus with ``tr A = u`` and ``B = [[2,1],[3,2]]``.

    The commutator trace is ``14 - 3u^2`` (Fricke identity with
    ``tr B = 4``, ``tr AB = 2u``), which is below -2 exactly when
    ``u > 4/sqrt(3)``.
    """
    u = float(u)
    if not u > TORUS_U_MIN:
        raise CertificateError(
            f"u={u:g} is at or below the threshold {TORUS_U_MIN:.6f}: the boundary is not hyperbolic")
    lam = 0.5 * (u + math.sqrt(u * u - 4.0))
    A = Isometry(lam, 0.0, 0.0, 1.0 / lam)
    B = Isometry(2.0, 1.0, 3.0, 2.0)
    rho = 1.0 / (lam * math.sqrt(3.0))
    big = lam * lam * rho
    intervals = ((1, big, -big), (-1, -rho, rho), (2, 1.0 / 3.0, 1.0), (-2, -1.0, -1.0 / 3.0))
    w = lambda s: parse_class(s, 2)
    model = SurfaceModel(
        rank=2, generators=(A, B), topology=(1, 1), family="torus1", family_parameter=u,
        certificate=_PENDING, peripheral=(w("a b A B"),),
        simple_classes=(w("a"), w("b"), w("a b"), w("a B"), w("a b A B")),
        schottky_intervals=intervals)
    return _finish(model, L_cert, delta)


def _hyperbolic_along_unit_circle(length: float) -> Isometry:
    c, s = math.cosh(length / 2), math.sinh(length / 2)
    return Isometry(c, s, s, c)


def pants(separation: float = 6.0, length: float = 2.0 * math.acosh(2.0),
          L_cert: int = DEFAULT_L_CERT, delta: float = DEFAULT_DELTA) -> SurfaceModel:
    """Pair of pants: ``A`` translates along the unit semicircle by
    ``length`` and ``B`` is ``A`` conjugated by ``z -> z + separation``.

    With both axes translating the same way the peripheral classes are
    ``a``, ``b`` and ``(a b)^-1``, while ``a b^-1`` is a figure eight.  Raises :class:`CertificateError` when the
    isometric-circle intervals overlap.
    """
    A = _hyperbolic_along_unit_circle(length)
    T = Isometry(1.0, separation, 0.0, 1.0)
    Tinv = Isometry(1.0, -separation, 0.0, 1.0)
    B = T @ A @ Tinv
    try:
        intervals = isometric_circle_intervals((A, B))
    except DomainError as exc:
        raise CertificateError(str(exc)) from exc
    if not verify_schottky((A, B), intervals):
        raise CertificateError(
            f"separation {separation:g} too small: Schottky intervals overlap")
    w = lambda s: parse_class(s, 2)
    model = SurfaceModel(
        rank=2, generators=(A, B), topology=(0, 3), family="pants", family_parameter=float(separation),
        certificate=_PENDING, peripheral=(w("a"), w("b"), w("B A")),
        simple_classes=(w("a"), w("b"), w("a b")), excluded_topology=True,
        schottky_intervals=tuple((x, s, e) for x, (s, e) in sorted(intervals.items())))
    return _finish(model, L_cert, delta)


def custom_surface(generators: Sequence[Sequence[Sequence[float]]], topology: tuple[int, int],
                   peripheral: Sequence[str] = (), simple: Sequence[str] = (),
                   schottky_intervals: Mapping[str, Sequence[float]] | str | None = None,
                   L_cert: int = DEFAULT_L_CERT, delta: float = DEFAULT_DELTA,
                   name: str = "custom") -> SurfaceModel:
    """Model from explicit generator matrices (rows), e.g. loaded from a file."""
    gens = tuple(Isometry.from_rows(m) for m in generators)
    rank = len(gens)
    if rank < 2:
        raise DomainError("surfaces need rank >= 2")
    genus, boundary = topology
    if 2 - 2 * genus - boundary >= 0:
        raise DomainError(f"topology {topology} has non-negative Euler characteristic")
    if 2 * genus + boundary - 1 != rank:
        raise DomainError(f"topology {topology} has free rank {2 * genus + boundary - 1}, not {rank}")
    intervals = None
    if schottky_intervals == "isometric":
        intervals = tuple((x, s, e) for x, (s, e) in sorted(isometric_circle_intervals(gens).items()))
    elif schottky_intervals:
        intervals = tuple(sorted((_letter(k), float(v[0]), float(v[1]))
                                 for k, v in schottky_intervals.items()))
    model = SurfaceModel(
        rank=rank, generators=gens, topology=(genus, boundary), family=name, family_parameter=None,
        certificate=_PENDING,
        peripheral=tuple(parse_class(s, rank) for s in peripheral),
        simple_classes=tuple(parse_class(s, rank) for s in simple),
        excluded_topology=(genus, boundary) == (0, 3),
        schottky_intervals=intervals)
    return _finish(model, L_cert, delta)


def _letter(name: str) -> int:
    letters = parse_word(name)
    if len(letters) != 1:
        raise DomainError(f"interval key {name!r} must be a single letter")
    return letters[0]


# --------------------------------------------------------- specs / files

def parse_surface_spec(spec: str, L_cert: int = DEFAULT_L_CERT,
                       delta: float = DEFAULT_DELTA) -> SurfaceModel:
    """Build a built-in model from ``"torus1:u=4"`` or ``"pants:s=6,t=2.6"``."""
    name, _, rest = spec.partition(":")
    params: dict[str, float] = {}
    for item in filter(None, rest.split(",")):
        key, eq, value = item.partition("=")
        if not eq:
            raise DomainError(f"malformed surface parameter {item!r}")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise DomainError(f"surface parameter {item!r} is not a number") from None
    if name == "torus1":
        unknown = set(params) - {"u"}
        if unknown:
            raise DomainError(f"unknown torus1 parameter {sorted(unknown)[0]!r}")
        return one_holed_torus(params.get("u", 4.0), L_cert, delta)
    if name == "pants":
        unknown = set(params) - {"s", "t"}
        if unknown:
            raise DomainError(f"unknown pants parameter {sorted(unknown)[0]!r}")
        return pants(params.get("s", 6.0), params.get("t", 2.0 * math.acosh(2.0)), L_cert, delta)
    raise DomainError(f"unknown surface {name!r}")


def surface_from_config(config: Mapping) -> SurfaceModel:
    """Declarative surface description.

    Either ``{"family": "torus1", "u": 4}`` / ``{"surface": "torus1:u=4"}``
    or explicit matrices ``{"rank": 2, "generators": [[[..],[..]], ...],
    "topology": [1, 1], ...}``.  An optional ``"certificate": {"L_cert": 6,
    "delta": 0.05}`` applies to both.
    """
    cert = config.get("certificate", {})
    L_cert = int(cert.get("L_cert", DEFAULT_L_CERT))
    delta = float(cert.get("delta", DEFAULT_DELTA))
    if "surface" in config and isinstance(config["surface"], str):
        return parse_surface_spec(config["surface"], L_cert, delta)
    family = config.get("family")
    if family == "torus1":
        return one_holed_torus(config.get("u", 4.0), L_cert, delta)
    if family == "pants":
        return pants(config.get("s", 6.0), config.get("t", 2.0 * math.acosh(2.0)), L_cert, delta)
    if "generators" not in config:
        raise DomainError("surface config needs a family or explicit generators")
    gens = config["generators"]
    if "rank" in config and int(config["rank"]) != len(gens):
        raise DomainError(f"rank {config['rank']} does not match {len(gens)} generators")
    return custom_surface(gens, tuple(config.get("topology", (0, len(gens) + 1))),
                          config.get("peripheral", ()), config.get("simple", ()),
                          config.get("schottky_intervals"), L_cert, delta,
                          config.get("name", "custom"))


def load_surface(path: str | Path) -> SurfaceModel:
    with open(path) as fh:
        return surface_from_config(json.load(fh))

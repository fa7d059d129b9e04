"""Verification harness.

Each check produces a :class:`CheckRecord` with a claim id, a verdict, the
worst residual seen and the sample size.  Two vocabularies are used:

* identities that are exact or numeric with a tolerance report ``pass`` or
  ``fail``;
* statements quantified over all classes (annihilators, power-collision
  bounds, metric invariance) can only be sampled, so they report
  ``consistent with sampled evidence`` or ``contradicted by sample``.

All sampling goes through a seeded :class:`random.Random`, so a run is a
pure function of its configuration.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .brackets import goldman_bracket, twg_bracket, twg_via_goldman
from .chains import (ChainHat, ChainTilde, ChainUnder, iota_chain, project_A0, project_A1)
from .errors import DomainError, GoldmanError
from .intersections import (IntersectionPoint, algebraic_intersection_number,
                            enumerate_intersections, geometric_intersection_number,
                            homological_intersection)
from .moebius import Isometry, axis, check_cosh_product, crossing_frame, forward_angle
from . import precise
from .poisson import (PBWElement, STRATEGIES, deformed_bracket_basis, factor_key, from_hat,
                      from_tilde, from_under, poisson_bracket, to_hat, uea_multiply,
                      uea_normal_form)
from .surface import (SurfaceModel, geodesic_length, one_holed_torus, pants, represent_word,
                      word_ball)
from .words import (ClassTilde, ClassUnder, CyclicWord, UnderRelation, are_commensurable,
                    classes_equal_tilde, classes_equal_under, cyclic_classes, cyclically_reduce,
                    format_word, iota, is_reversible, multiply, power,
                    reduced_words, root)

PASS, FAIL = "pass", "fail"
CONSISTENT, CONTRADICTED = "consistent with sampled evidence", "contradicted by sample"
LOGGED = "logged"
FAILED_VERDICTS = (FAIL, CONTRADICTED)


@dataclass
class CheckRecord:
    claim: str
    verdict: str
    worst_residual: float | None
    sample_size: int
    details: dict = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.verdict in FAILED_VERDICTS

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 20240601
    depth: int = 8
    m_max: int = 8
    tol: float = 1e-8
    u_values: tuple[float, ...] = (3.5, 4.0, 5.0)
    annihilator_m_max: int = 5


def _identity(ok: bool) -> str:
    return PASS if ok else FAIL


def _theorem(ok: bool) -> str:
    return CONSISTENT if ok else CONTRADICTED


def _random_class(rng: random.Random, rank: int, max_len: int, min_len: int = 1) -> CyclicWord:
    letters = [x for i in range(1, rank + 1) for x in (i, -i)]
    while True:
        n = rng.randint(min_len, max_len)
        w: list[int] = []
        while len(w) < n:
            x = rng.choice(letters)
            if w and w[-1] == -x:
                continue
            w.append(x)
        c = cyclically_reduce(w, rank)
        if not c.is_trivial:
            return c


def _random_word(rng: random.Random, rank: int, max_len: int, min_len: int = 1) -> tuple:
    letters = [x for i in range(1, rank + 1) for x in (i, -i)]
    n = rng.randint(min_len, max_len)
    w: list[int] = []
    while len(w) < n:
        x = rng.choice(letters)
        if not (w and w[-1] == -x):
            w.append(x)
    return tuple(w)


# ------------------------------------------------------- geometric checks

def check_length_angle_identity(model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord,
                                P: IntersectionPoint, angle_offset: float = 0.0,
                                depth=None, method=None,
                                relative: bool = False) -> tuple[float, float]:
    """Residuals of the cosh relations for the two loop products at ``P``::

        cosh(l_0 / 2)   = cosh(a) cosh(b) - sinh(a) sinh(b) cos(theta)
        cosh(l_inf / 2) = cosh(a) cosh(b) + sinh(a) sinh(b) cos(theta)

    with ``a = l_alpha / 2`` and ``b = l_beta / 2``.  ``angle_offset`` shifts
    theta and is only there to confirm the check can fail.  With ``relative``
    each residual is divided by ``max(1, rhs)``.
    """
    from .brackets import star_infty, star_zero
    z = star_zero(model, alpha, beta, P, depth, method)
    i = star_infty(model, alpha, beta, P, depth, method)
    a = geodesic_length(model, alpha) / 2
    b = geodesic_length(model, beta) / 2
    cc = math.cosh(a) * math.cosh(b)
    ss = math.sinh(a) * math.sinh(b) * math.cos(P.angle + angle_offset)
    r0 = abs(math.cosh(geodesic_length(model, z) / 2) - (cc - ss))
    r1 = abs(math.cosh(geodesic_length(model, i) / 2) - (cc + ss))
    if relative:
        r0, r1 = r0 / max(1.0, abs(cc - ss)), r1 / max(1.0, abs(cc + ss))
    return r0, r1


def _crossing_pairs(model: SurfaceModel, rng: random.Random, n: int, max_len: int):
    out = []
    tries = 0
    while len(out) < n and tries < 100 * n:
        tries += 1
        g, h = _random_word(rng, model.rank, max_len), _random_word(rng, model.rank, max_len)
        G, H = represent_word(model, g), represent_word(model, h)
        if abs(G.trace) <= 2 or abs(H.trace) <= 2:
            continue
        if crossing_frame(axis(G), axis(H)) is None:
            continue
        out.append((g, h))
    return out


def check_cosh_products(model: SurfaceModel, cfg: VerifyConfig, n: int = 100) -> CheckRecord:
    rng = random.Random(cfg.seed)
    pairs = _crossing_pairs(model, rng, n, 3)
    worst, worst_abs, worst_double = 0.0, 0.0, 0.0
    for g, h in pairs:
        worst = max(worst, precise.cosh_product_residual(model, g, h, relative=True))
        worst_abs = max(worst_abs, precise.cosh_product_residual(model, g, h))
        worst_double = max(worst_double,
                           check_cosh_product(represent_word(model, g), represent_word(model, h)))
    # analytic pair: trace-4 diagonal against [[2,1],[3,2]] meet at a right angle
    lam = 2 + math.sqrt(3)
    D, B = Isometry(lam, 0, 0, 1 / lam), Isometry(2, 1, 3, 2)
    angle_err = abs(forward_angle(axis(D), axis(B)) - math.pi / 2)
    analytic = check_cosh_product(D, B)
    worst = max(worst, analytic)
    ok = len(pairs) == n and worst < cfg.tol and angle_err < 1e-9
    return CheckRecord("cosh-product", _identity(ok), worst, len(pairs) + 1,
                       {"analytic_angle_error": angle_err, "analytic_residual": analytic,
                        "worst_absolute": worst_abs, "double_precision_worst": worst_double})


def _sample_class_pairs(model: SurfaceModel, rng: random.Random, n: int, max_len: int,
                        depth=None, method=None):
    """Random non-commensurable pairs that actually intersect."""
    out = []
    tries = 0
    while len(out) < n and tries < 50 * n:
        tries += 1
        a = _random_class(rng, model.rank, max_len)
        b = _random_class(rng, model.rank, max_len)
        if are_commensurable(a, b):
            continue
        if len(enumerate_intersections(model, a, b, depth, method)) == 0:
            continue
        out.append((a, b))
    return out


def check_length_angle(model: SurfaceModel, cfg: VerifyConfig, n_pairs: int = 20) -> CheckRecord:
    rng = random.Random(cfg.seed + 1)
    pairs = _sample_class_pairs(model, rng, n_pairs, 4)
    models = [model]
    if model.family == "torus1":
        models = [one_holed_torus(u) for u in cfg.u_values]
    worst, worst_abs, points, mismatched = 0.0, 0.0, 0, 0
    for a, b in pairs:
        reference = None
        for mdl in models:
            pts = enumerate_intersections(mdl, a, b)
            key = [p.conjugator for p in pts]
            if reference is None:
                reference = key
            elif key != reference:
                mismatched += 1
            for P in pts:
                worst = max(worst, *check_length_angle_identity(mdl, a, b, P, relative=True))
                worst_abs = max(worst_abs, *check_length_angle_identity(mdl, a, b, P))
                points += 1
    ok = worst < cfg.tol and mismatched == 0 and len(pairs) == n_pairs
    return CheckRecord("length-angle", _identity(ok), worst, points,
                       {"pairs": len(pairs), "models": [m.label for m in models],
                        "worst_absolute": worst_abs,
                        "double_coset_mismatches": mismatched})


def check_family_invariance(model: SurfaceModel, cfg: VerifyConfig, n_pairs: int = 10) -> CheckRecord:
    """Intersection points correspond across metrics: same double cosets,
    same signs, on each model of the family slice."""
    if model.family != "torus1":
        return CheckRecord("family-invariance", LOGGED, None, 0, {"skipped": "no family"})
    rng = random.Random(cfg.seed + 2)
    pairs = []
    while len(pairs) < n_pairs:
        a, b = _random_class(rng, 2, 4), _random_class(rng, 2, 4)
        if not are_commensurable(a, b):
            pairs.append((a, b))
    models = [one_holed_torus(u) for u in cfg.u_values]
    bad = 0
    for a, b in pairs:
        sigs = {tuple((p.conjugator, p.sign) for p in enumerate_intersections(m, a, b))
                for m in models}
        bad += len(sigs) != 1
    return CheckRecord("family-invariance", _theorem(bad == 0), None, len(pairs),
                       {"models": [m.label for m in models], "mismatches": bad})


def check_homology(model: SurfaceModel, cfg: VerifyConfig, n: int = 40) -> CheckRecord:
    if model.topology != (1, 1):
        return CheckRecord("homology-sign", LOGGED, None, 0, {"skipped": "not a one-holed torus"})
    rng = random.Random(cfg.seed + 3)
    bad, count = 0, 0
    for _ in range(n):
        a, b = _random_class(rng, 2, 5), _random_class(rng, 2, 5)
        alg = algebraic_intersection_number(model, a, b)
        bad += alg != homological_intersection(model, a, b)
        bad += alg != -algebraic_intersection_number(model, b, a)
        count += 1
    a, b = model.word("a"), model.word("b")
    return CheckRecord("homology-sign", _identity(bad == 0), None, count,
                       {"a_dot_b": algebraic_intersection_number(model, a, b)})


# --------------------------------------------------------- Lie structure

def _lie_sample(model: SurfaceModel, cfg: VerifyConfig):
    short = cyclic_classes(model.rank, 2)
    triples = list(itertools.product(short, repeat=3))
    rng = random.Random(cfg.seed + 4)
    rand = [tuple(_random_class(rng, model.rank, 3) for _ in range(3)) for _ in range(25)]
    return triples, rand


def check_lie_axioms(model: SurfaceModel, cfg: VerifyConfig) -> CheckRecord:
    triples, rand = _lie_sample(model, cfg)
    G = lambda x, y: goldman_bracket(model, x, y)
    bad_anti = bad_jac = 0
    for x, y, z in triples + rand:
        X, Y, Z = ChainHat.of(x), ChainHat.of(y), ChainHat.of(z)
        bad_anti += not (G(X, Y) + G(Y, X)).is_zero
        bad_jac += not (G(X, G(Y, Z)) + G(Y, G(Z, X)) + G(Z, G(X, Y))).is_zero
    # mixed chains exercise bilinearity
    rng = random.Random(cfg.seed + 5)
    for _ in range(5):
        X = ChainHat([(_random_class(rng, model.rank, 3), rng.randint(-3, 3)) for _ in range(3)])
        Y = ChainHat([(_random_class(rng, model.rank, 3), Fraction(rng.randint(-3, 3), 2))
                      for _ in range(3)])
        bad_anti += not (G(X, Y) + G(Y, X)).is_zero
        bad_anti += not G(X, X).is_zero
    return CheckRecord("lie-axioms", _identity(bad_anti == 0 and bad_jac == 0), None,
                       len(triples) + len(rand) + 5,
                       {"antisymmetry_failures": bad_anti, "jacobi_failures": bad_jac})


def _pairs_from(triples):
    seen = set()
    for t in triples:
        for x, y in ((t[0], t[1]), (t[1], t[2]), (t[0], t[2])):
            if (x, y) not in seen:
                seen.add((x, y))
                yield x, y


def check_grading(model: SurfaceModel, cfg: VerifyConfig) -> CheckRecord:
    triples, rand = _lie_sample(model, cfg)
    G = lambda x, y: goldman_bracket(model, x, y)
    bad = {"even_even": 0, "even_odd": 0, "odd_odd": 0, "iota": 0}
    n = 0
    for x, y in _pairs_from(triples + rand):
        X, Y = ChainHat.of(x), ChainHat.of(y)
        X0, X1, Y0, Y1 = project_A0(X), project_A1(X), project_A0(Y), project_A1(Y)
        bad["even_even"] += not project_A1(G(X0, Y0)).is_zero
        bad["even_odd"] += not project_A0(G(X0, Y1)).is_zero
        bad["even_odd"] += not project_A0(G(X1, Y0)).is_zero
        bad["odd_odd"] += not project_A1(G(X1, Y1)).is_zero
        bad["iota"] += iota_chain(G(X, Y)) != G(iota_chain(X), iota_chain(Y))
        n += 1
    return CheckRecord("grading", _identity(not any(bad.values())), None, n, bad)


_FLAVOR_TYPES = {"tt": (ChainTilde, ChainTilde), "tu": (ChainTilde, ChainUnder),
                 "ut": (ChainUnder, ChainTilde), "uu": (ChainUnder, ChainUnder)}


def check_twg_consistency(model: SurfaceModel, cfg: VerifyConfig) -> CheckRecord:
    triples, rand = _lie_sample(model, cfg)
    bad = {f: 0 for f in _FLAVOR_TYPES}
    n = 0
    for x, y in _pairs_from(triples + rand):
        for f, (Tx, Ty) in _FLAVOR_TYPES.items():
            X, Y = Tx.of(x), Ty.of(y)
            if X.is_zero or Y.is_zero:
                continue
            bad[f] += twg_bracket(model, f, X, Y) != twg_via_goldman(model, X, Y)
        n += 1
    return CheckRecord("twg-consistency", _identity(not any(bad.values())), None, n, bad)


# ------------------------------------------------------------ annihilators

def _flavor_bracket(model, flavor, alpha_m: CyclicWord, beta: ChainHat, depth=None, method=None):
    Tx, Ty = _FLAVOR_TYPES[flavor]
    return twg_bracket(model, flavor, Tx.of(alpha_m), Ty(iter(beta)), depth, method)


def annihilator_scan(model: SurfaceModel, beta: ChainHat, simple_list: Sequence[CyclicWord] | None = None,
                     m_max: int = 5, depth=None, method=None) -> dict:
    """For every simple ``alpha``, flavor and ``m <= m_max`` record whether
    the bracket of ``alpha^m`` (in the flavor's first tier) with ``beta``
    (in its second tier) vanishes."""
    simple_list = list(simple_list if simple_list is not None else model.simple_classes)
    rows = []
    witness = None
    for alpha in simple_list:
        for flavor in _FLAVOR_TYPES:
            m0 = None
            zeros = []
            for m in range(1, m_max + 1):
                out = _flavor_bracket(model, flavor, power(alpha, m), beta, depth, method)
                zeros.append(out.is_zero)
                if not out.is_zero and m0 is None:
                    m0 = m
            rows.append({"alpha": str(alpha), "flavor": flavor, "zero": zeros, "m0": m0})
            if m0 is not None and witness is None:
                witness = {"alpha": str(alpha), "flavor": flavor, "m0": m0}
    verdict = "annihilates sample" if witness is None else f"essential witness at m0={witness['m0']}"
    return {"beta": [t["class"] + ":" + t["coeff"] for t in beta.to_json()],
            "m_max": m_max, "verdict": verdict, "witness": witness, "rows": rows}


def _graded_ok(model, alpha: CyclicWord, beta: ChainHat) -> bool:
    """``[A_i, A_j]`` lands in ``A_{i+j}`` for lifted ``alpha`` against both
    parts of ``beta``."""
    a = ChainHat.of(alpha)
    a0, a1 = project_A0(a), project_A1(a)
    b0, b1 = project_A0(beta), project_A1(beta)
    G = lambda x, y: goldman_bracket(model, x, y)
    return (project_A1(G(a0, b0)).is_zero and project_A0(G(a0, b1)).is_zero and
            project_A0(G(a1, b0)).is_zero and project_A1(G(a1, b1)).is_zero)


def check_annihilator(model: SurfaceModel, cfg: VerifyConfig) -> CheckRecord:
    boundary = ChainHat.of(model.peripheral[-1] if model.family == "pants" else model.peripheral[0])
    rep = annihilator_scan(model, boundary, m_max=cfg.annihilator_m_max)
    ok = rep["witness"] is None
    details = {"boundary": rep}
    n = len(rep["rows"]) * cfg.annihilator_m_max
    if not model.excluded_topology and len(model.simple_classes) >= 2:
        a, b = model.simple_classes[0], model.simple_classes[1]
        wit = annihilator_scan(model, ChainHat.of(b), [a], m_max=1)
        ok = ok and all(r["m0"] == 1 for r in wit["rows"])
        details["generator"] = wit
        even = ChainHat.of(b) + ChainHat.of(iota(b))
        graded = _graded_ok(model, a, even)
        under_zero = all(_flavor_bracket(model, f, a, even).is_zero for f in ("tu", "uu"))
        ok = ok and graded and under_zero
        details["even_beta"] = {"graded": graded, "twisted_flavors_zero": under_zero}
        n += 4 + 1
    return CheckRecord("annihilator", _theorem(ok), None, n, details)


# --------------------------------------------------------------- pants

def _is_peripheral_power(model: SurfaceModel, w: CyclicWord) -> bool:
    r = root(w)[0]
    return any(r == root(p)[0] or r == iota(root(p)[0]) for p in model.peripheral)


def pants_counterexample(model_pants: SurfaceModel, max_len: int = 3) -> dict:
    """An essential, non-peripheral class disjoint from every peripheral
    class of a pants model."""
    if not model_pants.excluded_topology:
        raise DomainError("pants_counterexample needs a pair-of-pants model")
    for w in cyclic_classes(model_pants.rank, max_len):
        if _is_peripheral_power(model_pants, w):
            continue
        counts = [geometric_intersection_number(model_pants, w, p) for p in model_pants.peripheral]
        if all(c == 0 for c in counts):
            return {"class": str(w), "peripheral": [str(p) for p in model_pants.peripheral],
                    "intersections": counts, "peripheral_power": False}
    return {"class": None}


def torus_disjoint_scan(model: SurfaceModel, max_len: int = 3) -> list[str]:
    """Non-peripheral classes disjoint from both generators (expected none)."""
    gens = [model.word("a"), model.word("b")]
    found = []
    for w in cyclic_classes(model.rank, max_len):
        if _is_peripheral_power(model, w):
            continue
        if all(geometric_intersection_number(model, w, g) == 0 for g in gens):
            found.append(str(w))
    return found


def essentiality_check(model: SurfaceModel, beta: CyclicWord,
                       simple_list: Sequence[CyclicWord] | None = None) -> dict:
    """Is ``beta`` disjoint from every listed simple class, and if so is it
    non-essential (trivial or a power of a boundary class)?

    Disjointness from all simple classes forces non-essential on the
    one-holed torus; on pants the implication fails and the report says so.
    """
    simple_list = list(simple_list if simple_list is not None else model.simple_classes)
    counts = {str(a): (0 if beta.is_trivial or are_commensurable(a, beta)
                       else geometric_intersection_number(model, a, beta))
              for a in simple_list}
    disjoint = all(c == 0 for c in counts.values())
    non_essential = beta.is_trivial or _is_peripheral_power(model, beta)
    if not disjoint:
        verdict = "not disjoint"
    else:
        verdict = CONSISTENT if non_essential else CONTRADICTED
    return {"beta": str(beta), "intersections": counts, "disjoint_from_all": disjoint,
            "non_essential": non_essential, "verdict": verdict}


def check_pants(model: SurfaceModel, cfg: VerifyConfig) -> CheckRecord:
    P = model if model.family == "pants" else pants()
    T = model if model.family == "torus1" else one_holed_torus(4.0)
    ex = pants_counterexample(P)
    torus_hits = torus_disjoint_scan(T, 3)
    # the essentiality implication holds on the torus boundary and breaks on pants
    torus_ess = essentiality_check(T, T.peripheral[0])
    pants_ess = (essentiality_check(P, P.word(ex["class"]), P.peripheral)
                 if ex["class"] is not None else None)
    ok = (ex["class"] is not None and not torus_hits and torus_ess["verdict"] == CONSISTENT
          and pants_ess["verdict"] == CONTRADICTED)
    return CheckRecord("pants-exclusion", _identity(ok), None,
                       len(cyclic_classes(2, 3)) * 2,
                       {"pants": P.label, "counterexample": ex, "torus": T.label,
                        "torus_disjoint_non_peripheral": torus_hits,
                        "essentiality": {"torus_boundary": torus_ess["verdict"],
                                         "pants_counterexample": pants_ess and pants_ess["verdict"]}})


# --------------------------------------------------------- free-group checks

def reversibility_crosscheck(model: SurfaceModel, max_len: int = 8, conj_len: int = 5,
                             matrix_len: int = 5, tol: float = 1e-9) -> dict:
    """Exact and matrix-level search for a class conjugate to its inverse.

    Exact: every nontrivial reduced word up to ``max_len``.  Matrix: for each
    class up to ``matrix_len`` look for ``g`` in the ball of radius
    ``conj_len`` with ``g w g^-1 = w^-1`` in PSL(2,R).
    """
    exact_hits = []
    n_exact = 0
    for w in reduced_words(model.rank, max_len, 1):
        c = cyclically_reduce(w, model.rank)
        n_exact += 1
        if not c.is_trivial and is_reversible(c):
            exact_hits.append(format_word(w))
    ball = word_ball(model, conj_len)
    M = ball.matrices
    matrix_hits = []
    classes = cyclic_classes(model.rank, matrix_len)
    for c in classes:
        W = represent_word(model, c.letters)
        Wi = np.array([W.d, -W.b, -W.c, W.a])
        # g W g^-1 with g = (a b; c d), g^-1 = (d -b; -c a)
        a, b, cc, d = M[:, 0], M[:, 1], M[:, 2], M[:, 3]
        p0 = a * W.a + b * W.c
        p1 = a * W.b + b * W.d
        p2 = cc * W.a + d * W.c
        p3 = cc * W.b + d * W.d
        conj = np.stack([p0 * d - p1 * cc, -p0 * b + p1 * a, p2 * d - p3 * cc, -p2 * b + p3 * a], 1)
        scale = np.maximum(1.0, np.abs(conj).max(axis=1))
        diff = np.minimum(np.abs(conj - Wi).max(axis=1), np.abs(conj + Wi).max(axis=1)) / scale
        if np.any(diff < tol):
            matrix_hits.append(str(c))
    agree = sorted(matrix_hits) == sorted(h for h in exact_hits if len(h.split()) <= matrix_len)
    trivial_reversible = is_reversible(cyclically_reduce((), model.rank))
    return {"words_checked": n_exact, "exact_reversible": exact_hits,
            "matrix_classes_checked": len(classes), "matrix_conjugator_ball": conj_len,
            "matrix_reversible": matrix_hits, "agree": agree,
            "trivial_reversible": trivial_reversible}


def check_reversibility(model: SurfaceModel, cfg: VerifyConfig) -> CheckRecord:
    rep = reversibility_crosscheck(model)
    ok = not rep["exact_reversible"] and not rep["matrix_reversible"] and rep["agree"] \
        and rep["trivial_reversible"]
    return CheckRecord("reversibility", _identity(ok), None,
                       rep["words_checked"] + rep["matrix_classes_checked"], rep)


def check_class_equivalence(model: SurfaceModel, cfg: VerifyConfig, max_len: int = 4) -> CheckRecord:
    """``u(a) = +-u(b)`` in the twisted quotient iff the unoriented classes agree,
    for every pair of classes up to ``max_len`` (trivial class included)."""
    classes = cyclic_classes(model.rank, max_len, include_trivial=True)
    bad = 0
    for a, b in itertools.product(classes, repeat=2):
        ua, ub = ChainUnder.of(a), ChainUnder.of(b)
        lhs = ua == ub or ua == -ub
        rhs = ChainTilde.of(a) == ChainTilde.of(b)
        word_level = classes_equal_under(a, b) is not UnderRelation.DISTINCT
        bad += lhs != rhs or word_level != classes_equal_tilde(a, b) or rhs != word_level
    return CheckRecord("class-equivalence", _identity(bad == 0), None, len(classes) ** 2,
                       {"classes": len(classes), "failures": bad})


# -------------------------------------------------------- power collisions

def power_star(alpha: CyclicWord, beta: CyclicWord, P: IntersectionPoint, m: int,
               which: str = "zero") -> CyclicWord:
    """``(alpha^m *_P beta)_0`` or ``_inf``: ``P`` read as an
    ``(alpha^m, beta)`` point keeps its conjugator and sign."""
    g = P.conjugator
    e = P.sign if which == "zero" else -P.sign
    b = beta.letters if e > 0 else tuple(-x for x in reversed(beta.letters))
    gi = tuple(-x for x in reversed(g))
    return cyclically_reduce(multiply(power(alpha, m).letters, g, b, gi), alpha.rank)


def scan_power_collisions(model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord,
                          P: IntersectionPoint, target: CyclicWord | str | None = None,
                          m_max: int = 8, which: str = "zero") -> dict:
    """Count ``m <= m_max`` where ``(alpha^m *_P beta)`` equals a target as an
    unoriented class.

    ``target`` is a class (fixed target, bound 2), the string ``"alpha^m"``
    (moving target, bound 1) or ``None`` for the product at ``m = 1``.
    """
    if P.alpha != alpha or P.beta != beta:
        from .errors import ForeignPointError
        raise ForeignPointError("intersection point does not belong to this pair")
    moving = target == "alpha^m"
    if target is None:
        target = power_star(alpha, beta, P, 1, which)
    hits = []
    for m in range(1, m_max + 1):
        t = power(alpha, m) if moving else target
        if classes_equal_tilde(power_star(alpha, beta, P, m, which), t):
            hits.append(m)
    bound = 1 if moving else 2
    return {"alpha": str(alpha), "beta": str(beta), "conjugator": format_word(P.conjugator),
            "which": which, "target": "alpha^m" if moving else str(target),
            "hits": hits, "count": len(hits), "bound": bound, "ok": len(hits) <= bound}


def scan_mixed_collisions(model: SurfaceModel, alpha: CyclicWord, P: IntersectionPoint,
                          Q: IntersectionPoint, m_max: int = 8) -> dict:
    """Collisions between products at two points on a simple ``alpha``.

    Zero-against-infinity collisions are bounded by one.  For
    zero-against-zero the bound holds unless some point ``R`` of
    ``(alpha, beta_1)`` has a larger angle than ``P``; that branch is
    recorded, not decided.
    """
    b1, b2 = P.beta, Q.beta
    mixed = [m for m in range(1, m_max + 1)
             if classes_equal_tilde(power_star(alpha, b1, P, m, "zero"),
                                    power_star(alpha, b2, Q, m, "infty"))]
    same = [m for m in range(1, m_max + 1)
            if classes_equal_tilde(power_star(alpha, b1, P, m, "zero"),
                                   power_star(alpha, b2, Q, m, "zero"))]
    angles_b1 = [p.angle for p in enumerate_intersections(model, alpha, b1)]
    return {"alpha": str(alpha), "beta1": str(b1), "beta2": str(b2),
            "P": format_word(P.conjugator), "Q": format_word(Q.conjugator),
            "zero_infty_hits": mixed, "zero_zero_hits": same,
            "theta_P": P.angle, "theta_Q": Q.angle,
            "larger_angle_exists": any(t > P.angle for t in angles_b1),
            "ok": len(mixed) <= 1}


def check_power_collisions(model: SurfaceModel, cfg: VerifyConfig, n_beta: int = 6) -> CheckRecord:
    rng = random.Random(cfg.seed + 6)
    simple = [s for s in model.simple_classes if s not in model.peripheral]
    if not simple:
        return CheckRecord("power-collisions", LOGGED, None, 0,
                           {"skipped": "no non-peripheral simple classes"})
    reports, mixed_reports = [], []
    fresh = _random_class(rng, model.rank, 6, 6)
    for alpha in simple:
        betas = []
        tries = 0
        while len(betas) < n_beta and tries < 200:
            tries += 1
            b = _random_class(rng, model.rank, 3)
            if are_commensurable(alpha, b) or b in betas:
                continue
            if len(enumerate_intersections(model, alpha, b)) == 0:
                continue
            betas.append(b)
        points = []
        for b in betas:
            for P in enumerate_intersections(model, alpha, b):
                points.append(P)
                for which in ("zero", "infty"):
                    reports.append(scan_power_collisions(model, alpha, b, P, None, cfg.m_max, which))
                    reports.append(scan_power_collisions(model, alpha, b, P, "alpha^m", cfg.m_max, which))
                    t = power_star(alpha, b, P, 2, which)
                    reports.append(scan_power_collisions(model, alpha, b, P, t, cfg.m_max, which))
                reports.append(scan_power_collisions(model, alpha, b, P, fresh, cfg.m_max))
        for P, Q in itertools.combinations(points[:8], 2):
            mixed_reports.append(scan_mixed_collisions(model, alpha, P, Q, cfg.m_max))
    ok = all(r["ok"] for r in reports) and all(r["ok"] for r in mixed_reports)
    worst = max((r["count"] for r in reports), default=0)
    return CheckRecord("power-collisions", _theorem(ok), float(worst), len(reports) + len(mixed_reports),
                       {"m_max": cfg.m_max, "max_fixed_target_hits":
                        max((r["count"] for r in reports if r["target"] != "alpha^m"), default=0),
                        "max_moving_target_hits":
                        max((r["count"] for r in reports if r["target"] == "alpha^m"), default=0),
                        "max_zero_infty_hits": max((len(r["zero_infty_hits"]) for r in mixed_reports),
                                                   default=0),
                        "angle_branch_log": [
                            {k: r[k] for k in ("alpha", "beta1", "beta2", "P", "Q", "zero_zero_hits",
                                               "theta_P", "larger_angle_exists")}
                            for r in mixed_reports if len(r["zero_zero_hits"]) > 1]})


# ------------------------------------------------------------- Poisson/PBW

def _factor_pool(model: SurfaceModel):
    cls = cyclic_classes(model.rank, 2)
    pool = {ClassTilde.of(c) for c in cls} | {ClassUnder.of(c).basis for c in cls}
    return sorted(pool, key=factor_key)


def check_poisson(model: SurfaceModel, cfg: VerifyConfig) -> CheckRecord:
    rng = random.Random(cfg.seed + 7)
    pool = _factor_pool(model)

    def mono():
        return PBWElement.monomial(*[rng.choice(pool) for _ in range(rng.randint(1, 3))])

    failures = {"antisymmetry": 0, "leibniz": 0, "jacobi": 0, "k0_degree1": 0,
                "confluence": 0, "associativity": 0, "commutator": 0, "inclusion": 0}
    samples = 0
    for k in (Fraction(0), Fraction(1), Fraction(1, 2)):
        B = lambda p, q: poisson_bracket(model, p, q, k)
        for _ in range(15):
            X, Y, Z = mono(), mono(), mono()
            failures["antisymmetry"] += not (B(X, Y) + B(Y, X)).is_zero
            failures["leibniz"] += B(X, Y * Z) != B(X, Y) * Z + Y * B(X, Z)
            failures["jacobi"] += not (B(X, B(Y, Z)) + B(Y, B(Z, X)) + B(Z, B(X, Y))).is_zero
            samples += 1
    # k = 0 on degree one is the TWG bracket
    for x, y in itertools.product(pool, repeat=2):
        got = deformed_bracket_basis(model, x, y, 0)
        flavor = ("t" if isinstance(x, ClassTilde) else "u") + ("t" if isinstance(y, ClassTilde) else "u")
        Tx, Ty = _FLAVOR_TYPES[flavor]
        ref = twg_bracket(model, flavor, Tx([(x, 1)]), Ty([(y, 1)]))
        ref = from_tilde(ref) if isinstance(ref, ChainTilde) else from_under(ref)
        failures["k0_degree1"] += got != ref
        failures["commutator"] += (uea_normal_form(model, (x, y)) - uea_normal_form(model, (y, x))) != got
    for _ in range(20):
        word = [rng.choice(pool) for _ in range(rng.randint(2, 4))]
        outs = {uea_normal_form(model, word, s, seed=rng.randrange(1 << 30))
                for s in STRATEGIES for _ in range(2)}
        failures["confluence"] += len(outs) != 1
    for _ in range(10):
        x, y, z = (PBWElement.monomial(rng.choice(pool)) for _ in range(3))
        lhs = uea_multiply(model, uea_multiply(model, x, y), z)
        rhs = uea_multiply(model, x, uea_multiply(model, y, z))
        failures["associativity"] += lhs != rhs
    # degree-one inclusion of directed classes is injective: it has a left inverse
    for c in cyclic_classes(model.rank, 3):
        failures["inclusion"] += to_hat(from_hat(ChainHat.of(c))) != ChainHat.of(c)
    return CheckRecord("poisson-pbw", _identity(not any(failures.values())), None,
                       samples + len(pool) ** 2 + 30, failures)


# ------------------------------------------------------------------ runner

CHECKS: dict[str, Callable[[SurfaceModel, VerifyConfig], CheckRecord]] = {
    "cosh-product": check_cosh_products,
    "length-angle": check_length_angle,
    "family-invariance": check_family_invariance,
    "homology-sign": check_homology,
    "lie-axioms": check_lie_axioms,
    "grading": check_grading,
    "twg-consistency": check_twg_consistency,
    "annihilator": check_annihilator,
    "pants-exclusion": check_pants,
    "reversibility": check_reversibility,
    "class-equivalence": check_class_equivalence,
    "power-collisions": check_power_collisions,
    "poisson-pbw": check_poisson,
}


def run_check(claim: str, model: SurfaceModel, cfg: VerifyConfig | None = None) -> CheckRecord:
    cfg = cfg or VerifyConfig()
    try:
        fn = CHECKS[claim]
    except KeyError:
        raise DomainError(f"unknown claim id {claim!r}; known: {', '.join(sorted(CHECKS))}") from None
    try:
        return fn(model, cfg)
    except GoldmanError as exc:
        return CheckRecord(claim, FAIL, None, 0, {"error": f"{type(exc).__name__}: {exc}"})


def run_all(model: SurfaceModel, cfg: VerifyConfig | None = None,
            claims: Iterable[str] | None = None) -> list[CheckRecord]:
    """Run checks sequentially and return them sorted by claim id."""
    cfg = cfg or VerifyConfig()
    names = sorted(claims) if claims is not None else sorted(CHECKS)
    return [run_check(name, model, cfg) for name in names]


def _round_floats(obj):
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return str(obj)
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def to_jsonl(records: Sequence[CheckRecord]) -> str:
    return "".join(json.dumps(_round_floats(r.as_dict()), sort_keys=True) + "\n" for r in records)


def to_csv(records: Sequence[CheckRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["claim", "verdict", "worst_residual", "sample_size"])
    for r in records:
        res = "" if r.worst_residual is None else f"{r.worst_residual:.12g}"
        w.writerow([r.claim, r.verdict, res, r.sample_size])
    return buf.getvalue()

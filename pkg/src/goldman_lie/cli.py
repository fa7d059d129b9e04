"""Command-line front end.

Word grammar: whitespace-separated tokens, each a run of letters with an
optional integer exponent.  Lowercase letters are generators and uppercase
their inverses, so ``"a b A B"``, ``"abAB"`` and ``"a^3 b^-1"`` are words;
``1`` is the identity.

Chains (``--x``/``--y`` for directed and TWG brackets) are sums of terms
``[coeff*]word`` joined by `` + `` or `` - `` with spaces around the sign,
e.g. ``"a + 1/2*b^2 - a b"``.  PBW elements (``poisson``) are sums of
monomials whose factors are joined by ``*``; a factor is a word followed by
``~`` (unoriented tier) or ``_`` (twisted tier), e.g. ``"2*a~ * b_ + a b~"``.

Output is JSON on stdout (floats to 12 significant digits) and diagnostics
on stderr.  Exit codes: 0 success, 1 domain or input error, 2 unstable
enumeration, 3 failed verification.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import Sequence

from .brackets import goldman_bracket, twg_bracket
from .chains import ChainHat, ChainTilde, ChainUnder
from .errors import GoldmanError, UnstableEnumerationError, WordParseError
from .intersections import enumerate_intersections
from .poisson import PBWElement, format_factor, parse_factor, poisson_bracket, sort_monomial, uea_normal_form
from .surface import (DEFAULT_DELTA, DEFAULT_L_CERT, SurfaceModel, load_surface,
                      parse_surface_spec)
from .verify import CHECKS, VerifyConfig, _round_floats, annihilator_scan, run_all, to_csv, to_jsonl
from .words import parse_class

EXIT_OK, EXIT_DOMAIN, EXIT_UNSTABLE, EXIT_FAILED = 0, 1, 2, 3
DEFAULT_SURFACE = "torus1:u=4"

_SIGN_SPLIT = re.compile(r"\s+([+-])\s+")
_COEFF = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s*\*\s*(.*)$")


class CliError(GoldmanError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse would exit with 2, which is reserved for unstable enumeration
        raise CliError(message)


# ----------------------------------------------------------------- parsing

def _split_terms(text: str) -> list[tuple[int, str]]:
    text = text.strip()
    sign = 1
    if text.startswith("-") and not text.startswith("--"):
        sign, text = -1, text[1:].strip()
    elif text.startswith("+"):
        text = text[1:].strip()
    parts = _SIGN_SPLIT.split(text)
    out = [(sign, parts[0])]
    for op, body in zip(parts[1::2], parts[2::2]):
        out.append((1 if op == "+" else -1, body))
    return out


def _coeff_body(sign: int, term: str) -> tuple[Fraction, str]:
    m = _COEFF.match(term)
    if m:
        try:
            return sign * Fraction(m.group(1)), m.group(2)
        except (ValueError, ZeroDivisionError):
            raise WordParseError(f"bad coefficient {m.group(1)!r}", m.group(1)) from None
    return Fraction(sign), term


def parse_chain_terms(text: str, rank: int):
    terms = []
    for sign, term in _split_terms(text):
        c, body = _coeff_body(sign, term)
        if not body.strip():
            raise WordParseError(f"empty term in {text!r}", text)
        terms.append((parse_class(body, rank), c))
    return terms


def parse_pbw(text: str, rank: int) -> PBWElement:
    terms = []
    for sign, term in _split_terms(text):
        c, body = _coeff_body(sign, term)
        factors = []
        for piece in body.split("*"):
            piece = piece.strip()
            if piece == "1":
                continue
            if not piece or piece[-1] not in "~_":
                raise WordParseError(
                    f"factor {piece!r} needs a tier suffix: '~' (unoriented) or '_' (twisted)", piece)
            factors.append(parse_factor(piece[:-1], piece[-1], rank))
        terms.append((sort_monomial(factors), c))
    return PBWElement(terms)


def parse_factor_list(items: Sequence[str], rank: int):
    out = []
    for item in items:
        for piece in item.split("*"):
            piece = piece.strip()
            if not piece:
                continue
            if piece[-1] not in "~_":
                raise WordParseError(
                    f"factor {piece!r} needs a tier suffix: '~' (unoriented) or '_' (twisted)", piece)
            out.append(parse_factor(piece[:-1], piece[-1], rank))
    return out


# ------------------------------------------------------------------ output

def _emit(obj) -> None:
    sys.stdout.write(json.dumps(_round_floats(obj), indent=2, sort_keys=False) + "\n")


def _emit_rows(rows: list[dict], columns: Sequence[str]) -> None:
    import csv
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt_cell(r.get(c)) for c in columns])


def _fmt_cell(v):
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, (list, dict)):
        return json.dumps(_round_floats(v))
    return "" if v is None else v


# ------------------------------------------------------------------ config

def _env_defaults() -> dict:
    out = {}
    if "GOLDMAN_DEPTH" in os.environ:
        try:
            out["depth"] = int(os.environ["GOLDMAN_DEPTH"])
        except ValueError:
            raise CliError(f"GOLDMAN_DEPTH={os.environ['GOLDMAN_DEPTH']!r} is not an integer") from None
    if "GOLDMAN_TOL" in os.environ:
        try:
            out["tol"] = float(os.environ["GOLDMAN_TOL"])
        except ValueError:
            raise CliError(f"GOLDMAN_TOL={os.environ['GOLDMAN_TOL']!r} is not a number") from None
    return out


_SETTINGS = {"surface": DEFAULT_SURFACE, "surface_file": None, "depth": None, "tol": 1e-8,
             "method": None, "format": "json", "seed": VerifyConfig.seed,
             "m_max": None, "L_cert": DEFAULT_L_CERT, "delta": DEFAULT_DELTA}


def _resolve(args) -> dict:
    """defaults < environment < config file < explicit flags."""
    settings = dict(_SETTINGS)
    settings.update(_env_defaults())
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read config {args.config!r}: {exc}") from None
        for key, value in cfg.items():
            settings[key.replace("-", "_")] = value
    for key in list(settings):
        v = getattr(args, key, None)
        if v is not None:
            settings[key] = v
    # config files may also carry command inputs (x, y, beta, ...)
    for key in ("x", "y", "beta", "flavor", "k", "factors", "simple", "strategy"):
        v = getattr(args, key, None)
        if v is None and args.config and key in settings:
            setattr(args, key, settings[key])
    return settings


def _model(settings) -> SurfaceModel:
    if settings.get("surface_file"):
        return load_surface(settings["surface_file"])
    spec = settings["surface"]
    if isinstance(spec, dict):
        from .surface import surface_from_config
        return surface_from_config(spec)
    return parse_surface_spec(spec, int(settings["L_cert"]), float(settings["delta"]))


def _require(args, *names):
    for n in names:
        if getattr(args, n, None) in (None, []):
            raise CliError(f"missing required option --{n.replace('_', '-')}")


# ---------------------------------------------------------------- commands

def cmd_surface(args, settings) -> int:
    model = _model(settings)
    if args.action == "info":
        _emit(model.as_dict())
    else:
        _emit(model.certificate.as_dict())
    return EXIT_OK


def cmd_bracket(args, settings) -> int:
    _require(args, "x", "y")
    model = _model(settings)
    depth, method = settings["depth"], settings["method"]
    x = parse_chain_terms(args.x, model.rank)
    y = parse_chain_terms(args.y, model.rank)
    if args.kind == "goldman":
        out = goldman_bracket(model, ChainHat(x), ChainHat(y), depth, method)
        kind = "hat"
    else:
        flavor = args.flavor or "tt"
        if flavor not in ("tt", "tu", "ut", "uu"):
            raise CliError(f"unknown flavor {flavor!r}; expected tt, tu, ut or uu")
        tx = ChainTilde if flavor[0] == "t" else ChainUnder
        ty = ChainTilde if flavor[1] == "t" else ChainUnder
        out = twg_bracket(model, flavor, tx(x), ty(y), depth, method)
        kind = "tilde" if isinstance(out, ChainTilde) else "under"
    if settings["format"] == "csv":
        _emit_rows(out.to_json(), ["class", "coeff"])
    else:
        _emit({"surface": model.label, "bracket": args.kind,
               "flavor": None if args.kind == "goldman" else (args.flavor or "tt"),
               "result_type": kind, "chain": out.to_json()})
    return EXIT_OK


def cmd_intersect(args, settings) -> int:
    _require(args, "x", "y")
    model = _model(settings)
    a, b = parse_class(args.x, model.rank), parse_class(args.y, model.rank)
    res = enumerate_intersections(model, a, b, settings["depth"], settings["method"])
    pts = [p.as_dict() for p in res]
    if settings["format"] == "csv":
        _emit_rows(pts, ["conjugator", "position", "angle", "sign"])
        return EXIT_OK
    _emit({"surface": model.label, "alpha": str(a), "beta": str(b),
           "method": res.method, "depth": res.depth,
           "coinciding_axes": res.coinciding_axes,
           "shared_positions": res.shared_positions,
           "geometric_intersection_number": len(res),
           "algebraic_intersection_number": sum(p.sign for p in res),
           "points": pts})
    return EXIT_OK


def cmd_poisson(args, settings) -> int:
    _require(args, "x", "y")
    model = _model(settings)
    try:
        k = Fraction(str(args.k if args.k is not None else 0))
    except (ValueError, ZeroDivisionError):
        raise WordParseError(f"bad rational k {args.k!r}", str(args.k)) from None
    X, Y = parse_pbw(args.x, model.rank), parse_pbw(args.y, model.rank)
    out = poisson_bracket(model, X, Y, k, settings["depth"], settings["method"])
    _emit({"surface": model.label, "k": f"{k.numerator}/{k.denominator}", "element": out.to_json()})
    return EXIT_OK


def cmd_uea(args, settings) -> int:
    _require(args, "factors")
    model = _model(settings)
    factors = parse_factor_list(args.factors, model.rank)
    out = uea_normal_form(model, factors, args.strategy or "leftmost", settings["seed"],
                          settings["depth"], settings["method"])
    _emit({"surface": model.label, "input": [format_factor(f) for f in factors],
           "normal_form": out.to_json()})
    return EXIT_OK


def cmd_verify(args, settings) -> int:
    model = _model(settings)
    cfg = VerifyConfig(seed=int(settings["seed"]),
                       depth=int(settings["depth"] or VerifyConfig.depth),
                       m_max=int(settings["m_max"] or VerifyConfig.m_max),
                       tol=float(settings["tol"]))
    claims = None if args.claim == "all" else [args.claim]
    if claims and args.claim not in CHECKS:
        raise CliError(f"unknown claim id {args.claim!r}; known: {', '.join(sorted(CHECKS))}")
    records = run_all(model, cfg, claims)
    sys.stdout.write(to_csv(records) if settings["format"] == "csv" else to_jsonl(records))
    return EXIT_FAILED if any(r.failed for r in records) else EXIT_OK


def cmd_annihilator(args, settings) -> int:
    _require(args, "beta")
    model = _model(settings)
    beta = ChainHat(parse_chain_terms(args.beta, model.rank))
    simple = [parse_class(s, model.rank) for s in args.simple] if args.simple else None
    rep = annihilator_scan(model, beta, simple, int(settings["m_max"] or 5),
                           settings["depth"], settings["method"])
    if settings["format"] == "csv":
        _emit_rows(rep["rows"], ["alpha", "flavor", "zero", "m0"])
    else:
        _emit({"surface": model.label, **rep})
    return EXIT_OK


# ------------------------------------------------------------------ parser

def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("surface and numerics")
    g.add_argument("--surface", help=f"built-in surface spec, e.g. torus1:u=4 or pants:s=6,t=2.6 "
                                     f"(default {DEFAULT_SURFACE})")
    g.add_argument("--surface-file", help="JSON surface description (overrides --surface)")
    g.add_argument("--depth", type=int, help="conjugator search depth for the ball method "
                                             "(env GOLDMAN_DEPTH, default 8)")
    g.add_argument("--tol", type=float, help="verification tolerance (env GOLDMAN_TOL, default 1e-8)")
    g.add_argument("--method", choices=("tree", "ball"),
                   help="intersection enumeration (default: tree for Schottky models)")
    g.add_argument("--format", choices=("json", "csv"), help="output format (default json)")
    g.add_argument("--seed", type=int, help="seed for sampled checks and random rewriting")
    g.add_argument("--L-cert", dest="L_cert", type=int, help="certificate word length (default 6)")
    g.add_argument("--delta", type=float, help="certificate minimum translation length (default 0.05)")
    g.add_argument("--config", help="JSON file mirroring these flags; flags win")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="goldman", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("surface", help="build a surface model and print it or its certificate")
    p.add_argument("action", choices=("info", "certify"))
    _common(p)

    p = sub.add_parser("bracket", help="Goldman or TWG bracket of two chains")
    p.add_argument("kind", choices=("goldman", "twg"))
    p.add_argument("--flavor", help="TWG tiers of x and y: tt, tu, ut or uu (default tt)")
    p.add_argument("--x", help="first chain, e.g. 'a + 1/2*b'")
    p.add_argument("--y", help="second chain")
    _common(p)

    p = sub.add_parser("intersect", help="intersection points of two classes")
    p.add_argument("--x", help="first class")
    p.add_argument("--y", help="second class")
    _common(p)

    p = sub.add_parser("poisson", help="deformed Poisson bracket of two PBW elements")
    p.add_argument("--k", help="deformation parameter, a rational such as 1/2 (default 0)")
    p.add_argument("--x", help="first element, e.g. 'a~ * b_'")
    p.add_argument("--y", help="second element")
    _common(p)

    p = sub.add_parser("uea", help="enveloping algebra utilities")
    p.add_argument("action", choices=("normal-form",))
    p.add_argument("--factors", nargs="+", help="ordered factors, e.g. b_ a~ or 'b_ * a~'")
    p.add_argument("--strategy", choices=("leftmost", "rightmost", "random"))
    _common(p)

    p = sub.add_parser("verify", help="run verification checks (JSON lines or CSV)")
    p.add_argument("claim", help="'all' or one of: " + ", ".join(sorted(CHECKS)))
    p.add_argument("--m-max", dest="m_max", type=int, help="largest power in collision scans (default 8)")
    _common(p)

    p = sub.add_parser("annihilator-scan", help="brackets of powers of simple classes with a chain")
    p.add_argument("--beta", help="chain to scan, e.g. 'a b A B'")
    p.add_argument("--simple", nargs="+", help="simple classes (default: the model's list)")
    p.add_argument("--m-max", dest="m_max", type=int, help="largest power (default 5)")
    _common(p)
    return parser


COMMANDS = {"surface": cmd_surface, "bracket": cmd_bracket, "intersect": cmd_intersect,
            "poisson": cmd_poisson, "uea": cmd_uea, "verify": cmd_verify,
            "annihilator-scan": cmd_annihilator}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            parser.print_help(sys.stderr)
            return EXIT_DOMAIN
        settings = _resolve(args)
        return COMMANDS[args.command](args, settings)
    except UnstableEnumerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE
    except (GoldmanError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

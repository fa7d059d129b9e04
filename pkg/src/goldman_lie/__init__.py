"""Goldman and twisted (TWG) brackets on hyperbolic surfaces with boundary.

Free homotopy classes are cyclic words in a free group realised as a
Schottky group in PSL(2, R).  Intersection points of closed geodesics are
enumerated in the universal cover, and the brackets, their Lie and Poisson
structures and the supporting geometric identities are computed from them.
"""

from .brackets import (goldman_bracket, star_infty, star_zero, twg_bracket, twg_tilde_tilde,
                       twg_tilde_under, twg_under_tilde, twg_under_under, twg_via_goldman)
from .chains import ChainHat, ChainTilde, ChainUnder
from .errors import (CertificateError, DomainError, ForeignPointError, GoldmanError,
                     RankMismatchError, UnstableEnumerationError, WordParseError)
from .intersections import (IntersectionPoint, Intersections, algebraic_intersection_number,
                            enumerate_intersections, geometric_intersection_number,
                            homological_intersection)
from .poisson import PBWElement, poisson_bracket, uea_normal_form
from .surface import (SurfaceModel, custom_surface, geodesic_length, load_surface,
                      one_holed_torus, pants, parse_surface_spec)
from .words import ClassTilde, ClassUnder, CyclicWord, iota, parse_class, parse_word, power, root

__version__ = "0.1.0"

__all__ = [
    "CertificateError",
    "ChainHat",
    "ChainTilde",
    "ChainUnder",
    "ClassTilde",
    "ClassUnder",
    "CyclicWord",
    "DomainError",
    "ForeignPointError",
    "GoldmanError",
    "IntersectionPoint",
    "Intersections",
    "PBWElement",
    "RankMismatchError",
    "SurfaceModel",
    "UnstableEnumerationError",
    "WordParseError",
    "algebraic_intersection_number",
    "custom_surface",
    "enumerate_intersections",
    "geodesic_length",
    "geometric_intersection_number",
    "goldman_bracket",
    "homological_intersection",
    "iota",
    "load_surface",
    "one_holed_torus",
    "pants",
    "parse_class",
    "parse_surface_spec",
    "parse_word",
    "poisson_bracket",
    "power",
    "root",
    "star_infty",
    "star_zero",
    "twg_bracket",
    "twg_tilde_tilde",
    "twg_tilde_under",
    "twg_under_tilde",
    "twg_under_under",
    "twg_via_goldman",
    "uea_normal_form",
]

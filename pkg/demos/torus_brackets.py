"""Walk through the one-holed torus model: certificate, crossings, brackets.

    python demos/torus_brackets.py [u]
"""

import math
import sys

from goldman_lie import (ChainHat, ChainTilde, ChainUnder, enumerate_intersections,
                         geodesic_length, goldman_bracket, one_holed_torus, twg_bracket)
from goldman_lie.verify import check_length_angle_identity

u = float(sys.argv[1]) if len(sys.argv) > 1 else 4.0
torus = one_holed_torus(u)
cert = torus.certificate
print(f"{torus.label}: certified to word length {cert.L_cert}, "
      f"shortest geodesic {cert.shortest_word} of length {cert.min_translation_length:.4f}")

a, b, ab, boundary = (torus.word(w) for w in ("a", "b", "a b", "a b A B"))
print(f"length of boundary {boundary}: {geodesic_length(torus, boundary):.6f}")

# crossings carry a conjugator, an angle in (0, pi) and a sign
for x, y in [(a, b), (ab, torus.word("a B")), (torus.word("a a b"), b)]:
    pts = enumerate_intersections(torus, x, y)
    print(f"\n{x} vs {y}: {len(pts)} crossing(s)")
    for P in pts:
        r0, r_inf = check_length_angle_identity(torus, x, y, P)
        print(f"  g={P.as_dict()['conjugator']:<6} angle={P.angle:.6f} sign={P.sign:+d} "
              f"length-angle residuals {r0:.1e}, {r_inf:.1e}")

print("\n[a, b]_G       =", goldman_bracket(torus, ChainHat.of(a), ChainHat.of(b)))
print("[a, boundary]_G =", goldman_bracket(torus, ChainHat.of(a), ChainHat.of(boundary)))
for flavor in ("tt", "tu", "ut", "uu"):
    X = (ChainTilde if flavor[0] == "t" else ChainUnder).of(a)
    Y = (ChainTilde if flavor[1] == "t" else ChainUnder).of(b)
    print(f"TWG {flavor}(a, b)   =", twg_bracket(torus, flavor, X, Y))

# the analytic pair: trace-4 axes meeting at a right angle
print(f"\nright-angle check: angle(a, b) - pi/2 = "
      f"{enumerate_intersections(torus, a, b)[0].angle - math.pi / 2:.2e}")

"""A pair of pants has an essential curve missing every boundary curve.

On the one-holed torus a class disjoint from both generators must be
peripheral; on pants the figure-eight class ``a B`` is a counterexample.

    python demos/pants_counterexample.py
"""

from goldman_lie import ChainHat, goldman_bracket, one_holed_torus, pants
from goldman_lie.verify import essentiality_check, pants_counterexample, torus_disjoint_scan

P = pants()
print(f"{P.label}: peripheral classes {[str(p) for p in P.peripheral]}")
ex = pants_counterexample(P)
eight = P.word(ex["class"])
print(f"counterexample {eight}: intersections with peripherals {ex['intersections']}")
print("essentiality:", essentiality_check(P, eight, P.peripheral)["verdict"])

# brackets with every boundary class vanish although the class is essential
for p in P.peripheral:
    print(f"  [{eight}, {p}]_G =", goldman_bracket(P, ChainHat.of(eight), ChainHat.of(p)))

T = one_holed_torus(4.0)
print(f"\n{T.label}: non-peripheral classes of length <= 3 disjoint from a and b:",
      torus_disjoint_scan(T, 3) or "none")
print("essentiality of the boundary:", essentiality_check(T, T.peripheral[0])["verdict"])

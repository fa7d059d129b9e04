"""The deformed Poisson bracket and PBW normal ordering on the torus.

    python demos/poisson_uea.py
"""

from fractions import Fraction

from goldman_lie import PBWElement, one_holed_torus, poisson_bracket, uea_normal_form
from goldman_lie.poisson import parse_factor, uea_commutator

torus = one_holed_torus(4.0)
ta, tb = parse_factor("a", "tilde", 2), parse_factor("b", "tilde", 2)
ua, ub = parse_factor("a", "under", 2), parse_factor("b", "under", 2)

for k in (0, 1, Fraction(1, 2)):
    out = poisson_bracket(torus, PBWElement.monomial(ta), PBWElement.monomial(tb), k)
    print(f"k={k}: {{a~, b~}} = {out}")

x, y = PBWElement.monomial(ta), PBWElement.monomial(ub, ub)
print("\nLeibniz: {a~, b_ b_} =", poisson_bracket(torus, x, y, 1))

print("\nnormal form of b_ a~     =", uea_normal_form(torus, [ub, ta]))
print("normal form of b_ b~ a~  =", uea_normal_form(torus, [ub, tb, ta]))
print("commutator [b_, a~]       =", uea_commutator(torus, ub, ta))
same = {uea_normal_form(torus, [ub, tb, ua, ta], s, seed=3) for s in ("leftmost", "rightmost", "random")}
print("rewrite strategies agree:", len(same) == 1)

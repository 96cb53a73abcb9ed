"""
Irrationality witnesses
=======================

A real a is irrational exactly when 0 < |a x - y| can be made smaller than
any epsilon.  For a = a/b it is stuck at 1/b.
"""

from fractions import Fraction

from dirichlet import EulerE, Sqrt, Zeta3, cantor_partials, cantor_preset, find_witness, rational_obstruction

for alpha in (Sqrt(7), EulerE(), Zeta3()):
    for k in (2, 4, 6):
        w = find_witness(alpha, Fraction(1, 10**k))
        print(f"{alpha.descriptor():>6} eps=1e-{k}: x={w.x:<8} y={w.y:<9} value ~ {float(w.certified_value.hi):.2e}")

rep = rational_obstruction(22, 7, 1000)
print(f"\n22/7: {rep.pairs_checked} candidate pairs with |x| <= 1000, violations: {len(rep.violations)}")

# e - 1 as a Cantor series with g_n = n: |(e - 1) N! - P_N| <= 1/N
series = cantor_preset("factorial")
for N in (1, 2, 5, 10, 15):
    r = cantor_partials(series, N)
    print(f"N={N:<3} G={r.G:<14} |alpha G - P| ~ {float(r.certified_value.hi):.4f} <= {r.bound}")

"""
The Pell equation from approximations
=====================================

Convergents p/n of sqrt(c) have norms p^2 - c n^2 inside a fixed window, so
two of them share a norm and residues; their quotient is a unit of norm 1.
"""

from dirichlet import pell_construction, pell_powers, solve_unit_linear

for c in (2, 13, 61, 109):
    tr = pell_construction(c)
    s = tr.fundamental
    alpha, beta = tr.collision
    print(f"c={c:<4} collision {alpha} and {beta}  (norm {alpha.norm()})")
    print(f"       x={s.x}, y={s.y}   after {len(tr.scanned)} convergents")

# the powers of the fundamental unit list further solutions
print("\nc=2:", [(s.x, s.y) for s in pell_powers(pell_construction(2).fundamental, 6)])

# a x - b y = 1 from a single approximation of a/b with N = b - 1
for a, b in ((3, 7), (17, 100), (-5, 3), (4, 1)):
    x, y = solve_unit_linear(a, b)
    print(f"{a}*{x} - {b}*{y} = {a * x - b * y}")

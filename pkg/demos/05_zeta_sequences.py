"""
Integer sequences for zeta(2) and zeta(3)
=========================================

The Beukers double integrals equal (a_n zeta(s) + b_n) / V(n)^s with integer
a_n, b_n and V(n) = lcm(1..n).  They shrink geometrically, faster than
V(n)^s grows, which is what forces irrationality.
"""

import numpy as np

from dirichlet import check_zeta2_bound, check_zeta3_bound, kernel_max_estimate, legendre_type, zeta2_witness, zeta3_witness

print("P_4(x) coefficients:", legendre_type(4).coeffs)

print("\n n   a_n (zeta 2)        |a zeta(2) + b|   bound")
for n in range(0, 11, 2):
    w = zeta2_witness(n)
    rep = check_zeta2_bound(n)
    print(f"{n:2d}  {w.a:<20d} {float(rep.lhs.hi):.3e}        {float(rep.rhs.hi):.3e}")

print("\n n   |a zeta(3) + b|   2 zeta(3) 27^n (sqrt2-1)^4n   2 zeta(3) (4/5)^n")
for n in range(0, 9, 2):
    rep = check_zeta3_bound(n)
    print(f"{n:2d}  {float(rep.lhs.hi):.3e}         {float(rep.rhs.hi):.3e}                  {float(rep.majorant.hi):.3e}")

# -b/a converges to zeta(s)
w = zeta3_witness(8)
print("\n-b_8/a_8 =", float(-w.beta / w.alpha_coeff), "  zeta(3) = 1.2020569031595942")

# the integrand maxima behind the decay rates
for which in ("zeta2-kernel", "zeta3-kernel"):
    r = kernel_max_estimate(which, 64)
    where = np.array([float(c) for c in r.argmax]).round(4)
    print(f"{which}: max ~ {float(r.estimate):.8f} at {where}, bound {float(r.bound.lo):.8f}")

"""
Several reals at once
=====================

The same pigeonhole in M dimensions: tuples n in [0, P]^L with
P = [N^(M/L)] are sorted by the vector of fractional parts of their M
linear forms into N^M subcubes.
"""

from dirichlet import EulerE, Sqrt, Zeta2, Zeta3, linear_form_approx, simultaneous_approx, small_linear_forms

# one denominator for sqrt 2, sqrt 3 and e
reals = [Sqrt(2), Sqrt(3), EulerE()]
for N in (2, 4, 8):
    r = simultaneous_approx(reals, N)
    q = r.n[0]
    fracs = ", ".join(f"{p}/{q}" for p in r.p)
    print(f"N={N}: q={q:<4} ({fracs}), every |q a - p| < 1/{N}")

# a small integer combination of zeta(2), zeta(3) close to an integer
r = linear_form_approx([Zeta2(), Zeta3()], 1000)
print(f"\n{r.n[0]}*zeta(2) + {r.n[1]}*zeta(3) is within 1/1000 of {r.p[0]}")
print("  certified error <=", float(r.certified_errors[0].hi))

# M < L homogeneous forms: a nonzero x making all of them small
coeffs = [[Sqrt(2), Sqrt(3), Sqrt(5)], [EulerE(), Zeta2(), Zeta3()]]
r = small_linear_forms(coeffs, 50)
print(f"\nx = {r.x}; form values <= {[round(float(v.hi), 4) for v in r.certified_values]}"
      f"; guaranteed bound {float(r.bound.lo):.4f}")

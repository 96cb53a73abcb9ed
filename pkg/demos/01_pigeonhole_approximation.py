"""
Rational approximation by pigeonhole
====================================

Drop the fractional parts of 0, a, 2a, ..., Na into N buckets; two land in
the same bucket, and their difference gives n <= N with |n a - p| < 1/N.
"""

from fractions import Fraction

from dirichlet import EulerE, Rational, Sqrt, Zeta2, dirichlet_approx, good_approx_stream

# one approximation per real, each with a certified error enclosure
for alpha in (Sqrt(2), EulerE(), Zeta2()):
    for N in (10, 1000, 10**5):
        r = dirichlet_approx(alpha, N)
        err = r.certified_error
        print(f"{alpha.descriptor():>7}  N={N:<6}  n={r.n:<6} p={r.p:<7} "
              f"|n a - p| in [{float(err.lo):.3e}, {float(err.hi):.3e}]  < 1/N = {1 / N:.1e}")
    print()

# doubling N gives infinitely many p/q with |a - p/q| < 1/q^2
stream = good_approx_stream(Sqrt(2), 8)
print("good approximations of sqrt(2):", ", ".join(str(f) for f in stream))

# for a rational a = 7/19 the stream would stop: the error 1/N hits the lattice 1/19
r = dirichlet_approx(Rational(Fraction(7, 19)), 50)
print(f"7/19 with N=50: n={r.n}, p={r.p}, error={r.certified_error.hi}")

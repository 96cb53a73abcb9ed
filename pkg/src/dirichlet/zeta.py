"""Integer witness sequences for zeta(2) and zeta(3).

The double integrals

    I2(n) = int int (1-y)^n P_n(x) / (1 - x y) dx dy
    I3(n) = int int -ln(x y) / (1 - x y) P_n(x) P_n(y) dx dy

are computed exactly: the integrand polynomial is expanded into monomials
x^r y^s and each monomial is replaced by its closed-form moment, which is
either a rational number or ``c * zeta(s) + rational``.  Nothing is
integrated numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize

from .errors import CertificationFailed, PreconditionError, V3BoundFailed
from .exactnum import (
    DEFAULT_MAX_BITS,
    DyadicInterval,
    LinearForm,
    Sqrt,
    Zeta2,
    Zeta3,
    lcm_upto,
)

ZETA2 = Zeta2()
ZETA3 = Zeta3()
_SQRT2 = Sqrt(2)
_SQRT5 = Sqrt(5)
_ZETA = {2: ZETA2, 3: ZETA3}


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients in increasing degree."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPoly:
        if len(self.coeffs) <= 1:
            return IntPoly((0,))
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))


def legendre_type(n: int) -> IntPoly:
    """``P_n(x) = (1/n!) (d/dx)^n [x^n (1-x)^n]``, by repeated differentiation."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    poly = IntPoly((0,) * n + tuple((-1) ** j * math.comb(n, j) for j in range(n + 1)))
    for _ in range(n):
        poly = poly.derivative()
    fact = math.factorial(n)
    if any(c % fact for c in poly.coeffs):
        raise AssertionError(f"P_{n} has a non-integral coefficient")  # pragma: no cover
    return IntPoly(tuple(c // fact for c in poly.coeffs))


# ---------------------------------------------------------------------------
# exact moments


@dataclass(frozen=True)
class ZetaCombination:
    """The exact number ``zeta_coeff * zeta(s) + rational``."""

    s: int
    zeta_coeff: int
    rational: Fraction

    def __add__(self, other: ZetaCombination) -> ZetaCombination:
        if other.s != self.s:
            raise ValueError("mixing zeta(2) and zeta(3) combinations")
        return ZetaCombination(self.s, self.zeta_coeff + other.zeta_coeff, self.rational + other.rational)

    def scale(self, c: int) -> ZetaCombination:
        return ZetaCombination(self.s, c * self.zeta_coeff, c * self.rational)

    def enclosure(self, k: int, max_bits: int = DEFAULT_MAX_BITS) -> DyadicInterval:
        return LinearForm([_ZETA[self.s]], max_bits=max_bits).enclosure([self.zeta_coeff], k, self.rational)


@lru_cache(maxsize=None)
def _power_sum(r: int, e: int) -> Fraction:
    """sum_{k=1}^{r} 1/k^e."""
    if r == 0:
        return Fraction(0)
    return _power_sum(r - 1, e) + Fraction(1, r**e)


def _off_diagonal(r: int, s: int, e: int) -> Fraction:
    lo, hi = min(r, s), max(r, s)
    return (_power_sum(hi, e) - _power_sum(lo, e)) / (hi - lo)


def kernel_moment(r: int, s: int) -> ZetaCombination:
    """``int int x^r y^s / (1 - x y) dx dy`` exactly.

    Diagonal: zeta(2) - sum_{k<=r} 1/k^2.  Off the diagonal the geometric
    series telescopes to (1/|r-s|) sum_{j=min+1}^{max} 1/j.
    """
    if r < 0 or s < 0:
        raise PreconditionError("exponents must be >= 0")
    if r == s:
        return ZetaCombination(2, 1, -_power_sum(r, 2))
    return ZetaCombination(2, 0, _off_diagonal(r, s, 1))


def log_kernel_moment(r: int, s: int) -> ZetaCombination:
    """``int int -ln(x y) / (1 - x y) x^r y^s dx dy`` exactly.

    Diagonal: 2 (zeta(3) - sum_{k<=r} 1/k^3); off the diagonal
    (1/|r-s|) sum_{j=min+1}^{max} 1/j^2.
    """
    if r < 0 or s < 0:
        raise PreconditionError("exponents must be >= 0")
    if r == s:
        return ZetaCombination(3, 2, -2 * _power_sum(r, 3))
    return ZetaCombination(3, 0, _off_diagonal(r, s, 2))


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class ZetaWitness:
    """Exact integral value ``alpha_coeff * zeta(s) + beta`` and its integer form
    ``(a * zeta(s) + b) / V(n)**s`` with ``a = V**s alpha_coeff``, ``b = V**s beta``.
    """

    n: int
    s: int
    alpha_coeff: int
    beta: Fraction
    V: int
    a: int
    b: int

    @property
    def value(self) -> ZetaCombination:
        return ZetaCombination(self.s, self.alpha_coeff, self.beta)

    def enclosure(self, k: int) -> DyadicInterval:
        """Enclosure of the exact integral ``alpha_coeff * zeta(s) + beta``."""
        return self.value.enclosure(k)

    def scaled_enclosure(self, k: int) -> DyadicInterval:
        """Enclosure of ``a * zeta(s) + b``."""
        return ZetaCombination(self.s, self.a, Fraction(self.b)).enclosure(k)


def _witness(n: int, s: int, terms) -> ZetaWitness:
    total = ZetaCombination(s, 0, Fraction(0))
    for coeff, moment in terms:
        if coeff:
            total = total + moment.scale(coeff)
    if not isinstance(total.zeta_coeff, int):
        raise AssertionError("zeta coefficient is not an integer")  # pragma: no cover
    v = lcm_upto(n)
    scaled = total.rational * v**s
    if scaled.denominator != 1:
        raise AssertionError(f"V({n})^{s} does not clear the denominator of {total.rational}")
    return ZetaWitness(n, s, total.zeta_coeff, total.rational, v, v**s * total.zeta_coeff, scaled.numerator)


def zeta2_witness(n: int) -> ZetaWitness:
    """Exact value of ``int int (1-y)^n P_n(x) / (1 - x y)``."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    px = legendre_type(n).coeffs
    terms = (
        (px[r] * (-1) ** j * math.comb(n, j), kernel_moment(r, j))
        for r in range(n + 1)
        for j in range(n + 1)
    )
    return _witness(n, 2, terms)


def zeta3_witness(n: int) -> ZetaWitness:
    """Exact value of ``int int -ln(xy)/(1 - x y) P_n(x) P_n(y)``."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    p = legendre_type(n).coeffs
    terms = ((p[r] * p[s], log_kernel_moment(r, s)) for r in range(n + 1) for s in range(n + 1))
    return _witness(n, 3, terms)


# ---------------------------------------------------------------------------
# decay certificates


def _phi5(k: int) -> DyadicInterval:
    # ((sqrt 5 - 1)/2)^5
    return ((_SQRT5.enclosure(k + 8) - 1) * Fraction(1, 2)) ** 5


def _silver4(k: int) -> DyadicInterval:
    # (sqrt 2 - 1)^4
    return (_SQRT2.enclosure(k + 8) - 1) ** 4


def _certify_le(lhs, rhs, max_bits: int) -> tuple[DyadicInterval, DyadicInterval]:
    """Refine two enclosure families until ``lhs <= rhs`` is certified."""
    k = 32
    while True:
        a, b = lhs(k), rhs(k)
        if a.hi <= b.lo:
            return a, b
        if a.lo > b.hi:
            raise CertificationFailed(f"inequality refuted: {a} > {b}")
        if k >= max_bits:
            raise CertificationFailed(f"could not separate {a} and {b} at {max_bits} bits")
        k = min(2 * k, max_bits)


@dataclass(frozen=True)
class BoundReport:
    """Certified ``0 < lhs <= rhs`` for one n.

    For s = 3, ``majorant`` encloses 2 zeta(3) (4/5)^n and ``majorant_strict``
    records whether ``rhs < majorant`` was certified (at n = 0 the two are
    equal, so only ``<=`` holds).
    """

    n: int
    s: int
    lhs: DyadicInterval
    rhs: DyadicInterval
    positive: bool
    holds: bool
    majorant: DyadicInterval | None = None
    majorant_strict: bool | None = None


def _positive(w: ZetaWitness, max_bits: int) -> DyadicInterval:
    k = 32
    while True:
        box = abs(w.scaled_enclosure(k))
        if box.lo > 0:
            return box
        if k >= max_bits:
            raise CertificationFailed(f"|a zeta({w.s}) + b| > 0 not certified at n = {w.n}")
        k = min(2 * k, max_bits)


def check_zeta2_bound(n: int, *, max_bits: int = DEFAULT_MAX_BITS) -> BoundReport:
    """Certify ``0 < |a_n zeta(2) + b_n| <= V(n)^2 ((sqrt 5 - 1)/2)^(5n) zeta(2)``."""
    w = zeta2_witness(n)
    _positive(w, max_bits)
    v2 = w.V**2
    if w.b == 0:
        # both sides are multiples of zeta(2): compare |a| with V^2 phi^(5n)
        lhs_c, rhs_c = _certify_le(
            lambda k: DyadicInterval.point(abs(w.a)),
            (lambda k: DyadicInterval.point(v2)) if n == 0 else (lambda k: v2 * _phi5(k) ** n),
            max_bits,
        )
        z = ZETA2.enclosure(64)
        return BoundReport(n, 2, lhs_c * z, rhs_c * z, True, True)
    lhs, rhs = _certify_le(
        lambda k: abs(w.scaled_enclosure(k)),
        lambda k: v2 * _phi5(k) ** n * ZETA2.enclosure(k + 8),
        max_bits,
    )
    return BoundReport(n, 2, lhs, rhs, True, True)


def check_zeta3_bound(n: int, *, max_bits: int = DEFAULT_MAX_BITS) -> BoundReport:
    """Certify ``0 < |a_n zeta(3) + b_n| <= 2 zeta(3) 27^n (sqrt 2 - 1)^(4n) <= 2 zeta(3) (4/5)^n``,
    the last step strict for n >= 1.
    """
    w = zeta3_witness(n)
    if w.V > 3**n:
        raise V3BoundFailed(f"V({n}) = {w.V} > 3^{n}")
    _positive(w, max_bits)
    if w.b == 0:
        lhs_c, rhs_c = _certify_le(
            lambda k: DyadicInterval.point(abs(w.a)),
            (lambda k: DyadicInterval.point(2)) if n == 0 else (lambda k: 2 * 27**n * _silver4(k) ** n),
            max_bits,
        )
        z = ZETA3.enclosure(64)
        lhs, rhs = lhs_c * z, rhs_c * z
    else:
        lhs, rhs = _certify_le(
            lambda k: abs(w.scaled_enclosure(k)),
            lambda k: 2 * ZETA3.enclosure(k + 8) * 27**n * _silver4(k) ** n,
            max_bits,
        )
    majorant = 2 * ZETA3.enclosure(64) * Fraction(4, 5) ** n
    if n == 0:
        strict = False
    else:
        # zeta(3) cancels: compare 27 (sqrt 2 - 1)^4 with 4/5
        _certify_le(lambda k: 27 * _silver4(k), lambda k: DyadicInterval.point(Fraction(4, 5)), max_bits)
        strict = True
    return BoundReport(n, 3, lhs, rhs, True, True, majorant, strict)


# ---------------------------------------------------------------------------
# kernel maxima


def _kernel2(x, y):
    den = 1 - x * y
    num = x * (1 - x) * y * (1 - y)
    return num / den if den else 0 * num


def _kernel3(x, y, w):
    den = 1 - (1 - x * y) * w
    num = x * (1 - x) * y * (1 - y) * w * (1 - w)
    return num / den if den else 0 * num


_KERNELS = {
    "zeta2-kernel": (2, _kernel2, _phi5),
    "zeta3-kernel": (3, _kernel3, _silver4),
}


@dataclass(frozen=True)
class KernelMaxReport:
    """Empirical maximum of a kernel against its analytic bound.

    ``estimate`` is an exact value of the kernel at ``argmax`` (a rational
    point), hence a certified lower bound of the true maximum; ``grid_max``
    is the exact largest value over the grid.  ``holds`` means
    ``estimate < bound`` was certified.
    """

    which: str
    grid: int
    argmax: tuple[Fraction, ...]
    estimate: Fraction
    grid_max: Fraction
    bound: DyadicInterval
    holds: bool

    @property
    def enclosure(self) -> DyadicInterval:
        """The maximum lies between the best value found and the analytic bound."""
        return DyadicInterval(self.estimate, max(self.estimate, self.bound.hi))


def _float_kernel(dim: int, pts: list[np.ndarray]) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        if dim == 2:
            x, y = pts
            num, den = x * (1 - x) * y * (1 - y), 1 - x * y
        else:
            x, y, w = pts
            num, den = x * (1 - x) * y * (1 - y) * w * (1 - w), 1 - (1 - x * y) * w
        return np.where(den > 0, num / np.where(den > 0, den, 1), 0.0)


def kernel_max_estimate(which: str, grid: int, *, max_bits: int = DEFAULT_MAX_BITS) -> KernelMaxReport:
    """Grid search plus local refinement for the maximum of a kernel on the unit cube.

    ``zeta2-kernel``: x(1-x)y(1-y)/(1-xy), bounded by ((sqrt 5 - 1)/2)^5.
    ``zeta3-kernel``: x(1-x)y(1-y)w(1-w)/(1-(1-xy)w), bounded by (sqrt 2 - 1)^4.
    """
    if which not in _KERNELS:
        raise PreconditionError(f"unknown kernel {which!r}; use one of {sorted(_KERNELS)}")
    if grid < 2:
        raise PreconditionError("grid must be >= 2")
    dim, exact_kernel, bound_fn = _KERNELS[which]
    axis = np.arange(grid + 1) / grid
    mesh = np.meshgrid(*([axis] * dim), indexing="ij")
    vals = _float_kernel(dim, mesh)
    top = vals.max()
    # every grid point that could be the exact maximum, evaluated exactly
    near = np.argwhere(vals >= top - 1e-9)
    grid_best = max(
        (tuple(Fraction(int(i), grid) for i in idx) for idx in near),
        key=lambda pt: exact_kernel(*pt),
    )
    grid_max = exact_kernel(*grid_best)

    res = minimize(
        lambda v: -_float_kernel(dim, list(v)),
        np.array([float(c) for c in grid_best]),
        bounds=[(0.0, 1.0)] * dim,
        method="L-BFGS-B",
    )
    refined = tuple(Fraction(float(min(max(c, 0.0), 1.0))) for c in res.x)
    refined_val = exact_kernel(*refined)
    argmax, estimate = (refined, refined_val) if refined_val > grid_max else (grid_best, grid_max)

    k = 32
    while True:
        bound = bound_fn(k)
        if estimate < bound.lo:
            return KernelMaxReport(which, grid, argmax, estimate, grid_max, bound, True)
        if estimate > bound.hi or k >= max_bits:
            return KernelMaxReport(which, grid, argmax, estimate, grid_max, bound, False)
        k = min(2 * k, max_bits)

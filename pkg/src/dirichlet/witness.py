"""Irrationality witnesses: integers x, y with 0 < |alpha x - y| arbitrarily small."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .approx import iter_good_approximations
from .errors import CertificationFailed, DegenerateBound, IrrationalRequired, PreconditionError
from .exactnum import DEFAULT_MAX_BITS, CantorSeries, DyadicInterval, LinearForm, RealOracle


@dataclass(frozen=True)
class IrrationalityWitness:
    x: int
    y: int
    epsilon: Fraction
    certified_value: DyadicInterval  # encloses |alpha x - y|, strictly inside (0, epsilon)


def find_witness(alpha: RealOracle, epsilon, *, max_bits: int = DEFAULT_MAX_BITS) -> IrrationalityWitness:
    """Take the first good approximation p/q with q > 1/epsilon; then
    ``0 < |alpha q - p| < 1/q < epsilon``.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise PreconditionError("epsilon must be positive")
    if not alpha.irrational:
        raise IrrationalRequired(f"{alpha.descriptor()} is not known to be irrational")
    form = LinearForm([alpha], max_bits=max_bits)
    for approx in iter_good_approximations(alpha, max_bits=max_bits):
        q, p = approx.denominator, approx.numerator
        if q * epsilon > 1:
            break
    k = 32
    while True:
        box = abs(form.enclosure([q], k, -p))
        if box.lo > 0 and box.hi < epsilon:
            return IrrationalityWitness(q, p, epsilon, box)
        if k >= max_bits:
            raise CertificationFailed(f"0 < |alpha*{q} - {p}| < {epsilon} not certified")
        k = min(2 * k, max_bits)


@dataclass(frozen=True)
class ObstructionReport:
    """Exhaustive search for 0 < |(a/b) x - y| < 1/b over |x| <= X; ``violations`` is always empty."""

    a: int
    b: int
    X: int
    pairs_checked: int
    violations: tuple[tuple[int, int], ...]

    @property
    def none_found(self) -> bool:
        return not self.violations


def rational_obstruction(a: int, b: int, X: int) -> ObstructionReport:
    """Check that a rational a/b admits no x, y with ``0 < |(a/b) x - y| < 1/b`` for |x| <= X.

    In integers the condition reads ``0 < |a x - b y| < 1``.  Only y within
    distance 1 of ``a x / b`` can qualify, so those are the ones scanned.
    """
    if b < 1 or X < 1:
        raise PreconditionError("need b >= 1 and X >= 1")
    checked = 0
    bad = []
    for x in range(-X, X + 1):
        t = a * x
        base = t // b
        for y in (base - 1, base, base + 1, base + 2):
            d = abs(t - b * y)  # b |(a/b) x - y|
            if d >= b:
                continue
            checked += 1
            if 0 < d < 1:
                bad.append((x, y))
    return ObstructionReport(a, b, X, checked, tuple(bad))


# ---------------------------------------------------------------------------
# Cantor series


def cantor_preset(name: str) -> CantorSeries:
    """Named digit/base sequences, all with z_n = 1.

    ``factorial``   g_n = n (the value is e - 1)
    ``constant:k``  g_n = k (the value is 1/(k - 1), bounded g)
    ``geometric:k`` g_n = k**n
    """
    kind, _, arg = name.partition(":")
    if kind == "factorial" and not arg:
        return CantorSeries(lambda n: n, unbounded=True, name="factorial")
    if kind in ("constant", "geometric"):
        try:
            k = int(arg)
        except ValueError:
            raise PreconditionError(f"preset {name!r} needs an integer parameter") from None
        if k < 2:
            raise PreconditionError(f"preset {name!r}: parameter must be >= 2")
        if kind == "constant":
            return CantorSeries(lambda n: k, unbounded=False, name=name, exact=Fraction(1, k - 1))
        return CantorSeries(lambda n: k**n, unbounded=True, name=name)
    raise PreconditionError(f"unknown Cantor preset {name!r} (factorial, constant:k, geometric:k)")


@dataclass(frozen=True)
class CantorPartials:
    N: int
    P: int
    G: int
    bound: Fraction
    certified_value: DyadicInterval  # encloses |alpha G - P|

    @property
    def holds(self) -> bool:
        return self.certified_value.lo > 0 and self.certified_value.hi <= self.bound


def cantor_partials(series: CantorSeries, N: int, *, max_bits: int = DEFAULT_MAX_BITS) -> CantorPartials:
    """``P_N``, ``G_N`` and the bound ``1/(g_{N+1} - 1)``, with
    ``0 < |alpha G_N - P_N| <= 1/(g_{N+1} - 1)`` certified.
    """
    if N < 1:
        raise PreconditionError("N must be >= 1")
    p, big_g = series.partial(N)
    nxt = series.g(N + 1)
    if nxt <= 1:
        raise DegenerateBound(f"g_{N + 1} = {nxt}; the bound 1/(g - 1) is undefined")
    bound = Fraction(1, nxt - 1)
    form = LinearForm([series], max_bits=max_bits)
    k = 32
    while True:
        box = abs(form.enclosure([big_g], k, -p))
        result = CantorPartials(N, p, big_g, bound, box)
        if result.holds:
            return result
        if k >= max_bits:
            raise CertificationFailed(f"0 < |alpha G_{N} - P_{N}| <= {bound} not certified")
        k = min(2 * k, max_bits)

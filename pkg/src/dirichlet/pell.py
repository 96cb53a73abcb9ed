"""The equations ax - by = 1 and x^2 - c y^2 = 1."""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction

from .approx import dirichlet_approx
from .errors import NonTrivialCase, NotCoprime, PreconditionError, SquareInput
from .exactnum import Rational


def _is_square(c: int) -> bool:
    return c >= 0 and math.isqrt(c) ** 2 == c


# ---------------------------------------------------------------------------
# ax - by = 1


def solve_unit_linear(a: int, b: int) -> tuple[int, int]:
    """Integers (x, y) with ``a x - b y = 1`` for coprime a and b >= 1.

    For b >= 2 the pigeonhole approximation of a/b with N = b - 1 gives
    ``|a n - b p| = 1``; the sign picks between (n, p) and (-n, -p).
    """
    if b < 1:
        raise PreconditionError(f"b must be >= 1, got {b}")
    if math.gcd(a, b) != 1:
        raise NotCoprime(f"gcd({a}, {b}) = {math.gcd(a, b)} != 1")
    if b == 1:
        return 0, -1
    res = dirichlet_approx(Rational(Fraction(a, b)), b - 1)
    d = a * res.n - b * res.p
    if d == 1:
        return res.n, res.p
    if d == -1:
        return -res.n, -res.p
    raise AssertionError(f"a n - b p = {d}, expected +-1")  # pragma: no cover


# ---------------------------------------------------------------------------
# quadratic integers


@dataclass(frozen=True)
class QuadInt:
    """``xi + eta * sqrt(c)`` with integer xi, eta and c >= 0."""

    xi: int
    eta: int
    c: int

    def __post_init__(self):
        if self.c < 0:
            raise PreconditionError("c must be >= 0")

    def _same_field(self, other: QuadInt):
        if self.c != other.c:
            raise ValueError(f"mixing sqrt({self.c}) and sqrt({other.c})")

    def __mul__(self, other: QuadInt) -> QuadInt:
        self._same_field(other)
        return QuadInt(
            self.xi * other.xi + self.c * self.eta * other.eta,
            self.xi * other.eta + other.xi * self.eta,
            self.c,
        )

    def __sub__(self, other: QuadInt) -> QuadInt:
        self._same_field(other)
        return QuadInt(self.xi - other.xi, self.eta - other.eta, self.c)

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.xi, -self.eta, self.c)

    def __pow__(self, k: int) -> QuadInt:
        if k < 0:
            raise ValueError("negative powers are not integral in general")
        result, base = QuadInt(1, 0, self.c), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> QuadInt:
        return QuadInt(self.xi, -self.eta, self.c)

    def norm(self) -> int:
        return self.xi * self.xi - self.c * self.eta * self.eta

    def exact_div(self, other: QuadInt) -> QuadInt:
        """``self / other``; raises ValueError unless the quotient is integral."""
        self._same_field(other)
        d = other.norm()
        if d == 0:
            raise ZeroDivisionError("division by an element of norm 0")
        num = self * other.conjugate()
        if num.xi % d or num.eta % d:
            raise ValueError(f"{self} / {other} is not integral")
        return QuadInt(num.xi // d, num.eta // d, self.c)

    def __str__(self):
        return f"{self.xi} + {self.eta}*sqrt({self.c})"


# ---------------------------------------------------------------------------
# x^2 - c y^2 = 1


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int
    c: int

    def __post_init__(self):
        if self.x * self.x - self.c * self.y * self.y != 1:
            raise ValueError(f"({self.x}, {self.y}) does not solve x^2 - {self.c} y^2 = 1")

    def as_quadint(self) -> QuadInt:
        return QuadInt(self.x, self.y, self.c)


@dataclass(frozen=True)
class TrivialPellSolutions:
    """Complete solution set when c < 0 or c is a square.

    ``points`` lists the finitely many solutions; when c = 0 every
    ``(+-1, t)`` solves the equation and ``parametric`` is True.
    """

    c: int
    points: tuple[tuple[int, int], ...]
    parametric: bool = False

    def contains(self, x: int, y: int) -> bool:
        if self.parametric:
            return x in (1, -1)
        return (x, y) in self.points


def solve_pell_trivial(c: int) -> TrivialPellSolutions:
    if c == -1:
        return TrivialPellSolutions(c, ((1, 0), (-1, 0), (0, 1), (0, -1)))
    if c < -1:
        return TrivialPellSolutions(c, ((1, 0), (-1, 0)))
    if c == 0:
        return TrivialPellSolutions(c, ((1, 0), (-1, 0)), parametric=True)
    if _is_square(c):
        return TrivialPellSolutions(c, ((1, 0), (-1, 0)))
    raise NonTrivialCase(f"c = {c} is positive and not a square")


def sqrt_convergents(c: int) -> Iterator[tuple[int, int]]:
    """Continued-fraction convergents ``(p, n)`` of sqrt(c), c a positive non-square.

    Uses the periodic expansion m, d, a of sqrt(c) in exact integers.
    """
    a0 = math.isqrt(c)
    m, d, a = 0, 1, a0
    p_prev, p = 1, a0
    n_prev, n = 0, 1
    yield p, n
    while True:
        m = d * a - m
        d = (c - m * m) // d
        a = (a0 + m) // d
        p_prev, p = p, a * p + p_prev
        n_prev, n = n, a * n + n_prev
        yield p, n


@dataclass
class PellConstruction:
    """Trace of :func:`pell_construction`.

    ``values`` are the norms p^2 - c n^2 of the scanned approximations;
    ``collision`` is the pair of same-norm, same-residue elements whose
    quotient is ``epsilon``; ``fundamental`` is the minimal positive solution.
    """

    c: int
    scanned: list[tuple[int, int]] = field(default_factory=list)
    values: list[int] = field(default_factory=list)
    collision: tuple[QuadInt, QuadInt] | None = None
    epsilon: QuadInt | None = None
    fundamental: PellSolution | None = None


def _within_norm_bound(value: int, c: int) -> bool:
    # |value| <= 2 sqrt(c) + 1, decided exactly
    v = abs(value)
    return v <= 1 or (v - 1) ** 2 <= 4 * c


def pell_construction(c: int, *, max_terms: int = 100_000) -> PellConstruction:
    """Run the equivalence-class construction on the convergents of sqrt(c).

    Each approximation p/n gives ``alpha = p + n sqrt(c)`` whose norm a lies in
    ``[-2 sqrt(c) - 1, 2 sqrt(c) + 1]``.  The first two elements with the same
    nonzero norm a and ``(p, n)`` congruent mod |a| have an integral quotient
    ``epsilon`` of norm 1.  The minimal positive solution is then the first
    norm-1 convergent with denominator at most ``|eta(epsilon)|``.
    """
    if c < 2 or _is_square(c):
        raise SquareInput(f"c = {c} must be a non-square integer >= 2")
    trace = PellConstruction(c)
    classes: dict[tuple[int, int, int], QuadInt] = {}
    stream = sqrt_convergents(c)
    for (p, n), _ in zip(stream, range(max_terms)):
        a = p * p - c * n * n
        if not _within_norm_bound(a, c):
            raise AssertionError(f"norm {a} of {p}/{n} outside the a-priori bound")  # pragma: no cover
        trace.scanned.append((p, n))
        trace.values.append(a)
        alpha = QuadInt(p, n, c)
        key = (a, p % abs(a), n % abs(a))
        beta = classes.setdefault(key, alpha)
        if beta is not alpha:
            eps = alpha.exact_div(beta)
            if eps.norm() != 1 or eps.eta == 0:
                raise AssertionError("quotient of equivalent elements is not a nontrivial unit")  # pragma: no cover
            trace.collision = (alpha, beta)
            trace.epsilon = eps
            break
    else:
        raise AssertionError(f"no class collision within {max_terms} convergents")  # pragma: no cover

    limit = abs(trace.epsilon.eta)
    candidates = iter(trace.scanned)
    for p, n in itertools.chain(candidates, stream):
        if n > limit:
            break
        if p * p - c * n * n == 1:
            trace.fundamental = PellSolution(p, n, c)
            return trace
    trace.fundamental = PellSolution(abs(trace.epsilon.xi), limit, c)
    return trace


def solve_pell(c: int) -> PellSolution:
    """Minimal solution x, y > 0 of ``x^2 - c y^2 = 1`` for non-square c >= 2."""
    return pell_construction(c).fundamental


def pell_powers(fundamental: PellSolution, k: int) -> list[PellSolution]:
    """The solutions given by eps**i, i = 1..k, with eps = x + y sqrt(c)."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    eps = fundamental.as_quadint()
    out, cur = [], QuadInt(1, 0, fundamental.c)
    for _ in range(k):
        cur = cur * eps
        out.append(PellSolution(cur.xi, cur.eta, cur.c))
    return out

"""Exact numbers and certified enclosures of real constants.

Integers are Python ``int`` and exact rationals are :class:`fractions.Fraction`.
A :class:`RealOracle` hands out nested-or-not, always-correct enclosures of a
real number at any requested number of bits; every inequality elsewhere in the
package is decided by refining these enclosures until the answer is certain.

Internally an oracle works with *scaled* enclosures: ``scaled(b)`` returns a
pair of integers ``(lo, hi)`` with ``lo / 2**b <= x <= hi / 2**b`` and
``hi - lo <= 4``.  Public :meth:`RealOracle.enclosure` turns that into a
:class:`DyadicInterval` of width at most ``2**-k``.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import PrecisionExhausted, PreconditionError

DEFAULT_MAX_BITS = 4096
DEFAULT_ENUM_CAP = 10**8

# width contract of RealOracle.scaled, in units of 2**-bits
_SCALED_WIDTH = 4


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _ceil_shift(a: int, s: int) -> int:
    return -((-a) >> s)


def format_rational(q) -> str:
    """Decimal string ``"p"`` or ``"p/q"`` for an int or Fraction."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; also accepts plain decimals like ``0.25``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"not a rational number: {text!r}") from exc


# ---------------------------------------------------------------------------
# intervals


@dataclass(frozen=True)
class DyadicInterval:
    """Closed interval ``[lo, hi]`` with exact rational endpoints.

    Oracle enclosures of irrational numbers have power-of-two denominators;
    rational oracles return the exact point ``[q, q]``.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q) -> DyadicInterval:
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, q) -> bool:
        return self.lo <= q <= self.hi

    def __add__(self, other):
        other = _as_interval(other)
        return DyadicInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return DyadicInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return _as_interval(other) - self

    def __mul__(self, other):
        other = _as_interval(other)
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return DyadicInterval(min(products), max(products))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        if self.lo >= 0:
            return DyadicInterval(self.lo**n, self.hi**n)
        result = DyadicInterval.point(1)
        for _ in range(n):
            result = result * self
        return result

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return DyadicInterval(0, max(-self.lo, self.hi))

    def to_json(self) -> list[str]:
        return [format_rational(self.lo), format_rational(self.hi)]

    def __repr__(self):
        return f"[{float(self.lo):.6g}, {float(self.hi):.6g}]"


def _as_interval(x) -> DyadicInterval:
    if isinstance(x, DyadicInterval):
        return x
    return DyadicInterval.point(x)


# ---------------------------------------------------------------------------
# oracles


class RealOracle(ABC):
    """A real number that can be enclosed to any precision.

    ``exact`` is the value when it is known to be rational; ``irrational`` is
    True only when irrationality is known.  Subclasses implement
    :meth:`_compute`.
    """

    exact: Fraction | None = None
    irrational: bool = False

    @abstractmethod
    def _compute(self, bits: int) -> tuple[int, int]:
        """Return ``(lo, hi)`` with ``lo/2**bits <= x <= hi/2**bits``, ``hi - lo <= 4``."""

    @abstractmethod
    def descriptor(self) -> str:
        """Short textual name, the same grammar the CLI parses."""

    def scaled(self, bits: int) -> tuple[int, int]:
        if bits < 0:
            raise ValueError("bits must be >= 0")
        best = getattr(self, "_best", None)
        if best is not None and best[0] >= bits:
            top, lo, hi = best
            shift = top - bits
            return lo >> shift, _ceil_shift(hi, shift)
        lo, hi = self._compute(bits)
        self._best = (bits, lo, hi)
        return lo, hi

    def enclosure(self, k: int) -> DyadicInterval:
        """Interval containing the value, of width at most ``2**-k``."""
        if k < 0:
            raise ValueError("precision k must be >= 0")
        if self.exact is not None:
            return DyadicInterval.point(self.exact)
        b = k + 3
        lo, hi = self.scaled(b)
        return DyadicInterval(Fraction(lo, 1 << b), Fraction(hi, 1 << b))

    def __repr__(self):
        return f"<{type(self).__name__} {self.descriptor()}>"


class Rational(RealOracle):
    def __init__(self, value):
        self.exact = Fraction(value)

    def _compute(self, bits):
        q = self.exact
        num = q.numerator << bits
        return num // q.denominator, _ceil_div(num, q.denominator)

    def descriptor(self):
        return f"rat:{format_rational(self.exact)}"

    def __eq__(self, other):
        return isinstance(other, Rational) and other.exact == self.exact

    def __hash__(self):
        return hash(("rat", self.exact))


class Sqrt(RealOracle):
    """Square root of a non-negative integer; perfect squares become :class:`Rational`."""

    irrational = True

    def __new__(cls, c: int):
        c = int(c)
        if c < 0:
            raise PreconditionError(f"sqrt of negative integer {c}")
        r = math.isqrt(c)
        if r * r == c:
            return Rational(r)
        return super().__new__(cls)

    def __init__(self, c: int):
        self.c = int(c)

    def _compute(self, bits):
        target = self.c << (2 * bits)
        a = math.isqrt(target)
        return a, a + 1

    def descriptor(self):
        return f"sqrt:{self.c}"


def _guard_bits(bits: int) -> int:
    return bits.bit_length() + 6


class EulerE(RealOracle):
    """e = sum 1/j!, tail after K terms below 2/(K+1)!."""

    irrational = True

    def _compute(self, bits):
        g = _guard_bits(bits)
        one = 1 << (bits + g)
        lo = hi = 0
        t_lo = t_hi = one
        j = 0
        while True:
            lo += t_lo
            hi += t_hi
            j += 1
            t_lo //= j
            t_hi = _ceil_div(t_hi, j)
            if t_hi <= 1:
                hi += 2 * t_hi
                break
        return lo >> g, _ceil_shift(hi, g)

    def descriptor(self):
        return "e"


class Zeta2(RealOracle):
    """zeta(2) = 3 * sum_{j>=1} 1/(j^2 C(2j, j)).

    Consecutive terms shrink by a factor below 1/4, so the tail after term J
    is below t_J / 3.
    """

    irrational = True

    def _compute(self, bits):
        g = _guard_bits(bits) + 2
        one = 1 << (bits + g)
        lo = hi = 0
        binom = 1
        j = 0
        while True:
            j += 1
            binom = binom * (2 * j - 1) * (2 * j) // (j * j)
            den = j * j * binom
            t_hi = _ceil_div(one, den)
            lo += one // den
            hi += t_hi
            if t_hi <= 1:
                hi += 1
                break
        return (3 * lo) >> g, _ceil_shift(3 * hi, g)

    def descriptor(self):
        return "zeta2"


class Zeta3(RealOracle):
    """zeta(3) = 5/2 * sum_{j>=1} (-1)^(j+1) / (j^3 C(2j, j)), an alternating series."""

    irrational = True

    def _compute(self, bits):
        g = _guard_bits(bits) + 3
        one = 1 << (bits + g)
        lo = hi = 0
        binom = 1
        j = 0
        while True:
            j += 1
            binom = binom * (2 * j - 1) * (2 * j) // (j * j)
            den = j * j * j * binom
            t_lo, t_hi = one // den, _ceil_div(one, den)
            if j % 2:
                lo += t_lo
                hi += t_hi
            else:
                lo -= t_hi
                hi -= t_lo
            if t_hi <= 1:
                # next term is smaller than this one and of opposite sign
                lo -= 1
                hi += 1
                break
        return (5 * lo) >> (g + 1), _ceil_shift(5 * hi, g + 1)

    def descriptor(self):
        return "zeta3"


class CantorSeries(RealOracle):
    """Value of sum_n z_n / (g_1 ... g_n).

    ``g`` and ``z`` map n >= 1 to the n-th term.  The tail after N terms is at
    most 1/(G_N (g_{N+1} - 1)), valid when g is nondecreasing from N+1 on and
    g_{N+1} >= 2.  ``unbounded`` records whether g grows without bound, the
    condition under which the value is irrational (given infinitely many
    nonzero z_n, which is trusted, not checked).
    """

    def __init__(
        self,
        g: Callable[[int], int],
        z: Callable[[int], int] = lambda n: 1,
        *,
        unbounded: bool,
        name: str = "custom",
        exact=None,
    ):
        self.g = g
        self.z = z
        self.unbounded = unbounded
        self.irrational = unbounded
        self.name = name
        if exact is not None:
            self.exact = Fraction(exact)

    def partial(self, n: int) -> tuple[int, int]:
        """``(P_N, G_N)`` with P_N / G_N the N-th partial sum."""
        p, big_g = 0, 1
        for i in range(1, n + 1):
            gi = self.g(i)
            zi = self.z(i)
            if gi < 1:
                raise PreconditionError(f"g_{i} = {gi} < 1")
            if zi not in (0, 1):
                raise PreconditionError(f"z_{i} = {zi} not in {{0, 1}}")
            p = p * gi + zi
            big_g *= gi
        return p, big_g

    def _compute(self, bits):
        g = _guard_bits(bits)
        one = 1 << (bits + g)
        lo = hi = 0
        big_g = 1
        n = 0
        while True:
            n += 1
            big_g *= self.g(n)
            if self.z(n):
                lo += one // big_g
                hi += _ceil_div(one, big_g)
            nxt = self.g(n + 1)
            if nxt >= 2:
                tail = _ceil_div(one, big_g * (nxt - 1))
                if tail <= 1:
                    hi += tail
                    break
        return lo >> g, _ceil_shift(hi, g)

    def descriptor(self):
        return f"cantor:{self.name}"


class Shifted(RealOracle):
    """``base + shift`` for a rational shift."""

    def __init__(self, base: RealOracle, shift):
        self.base = base
        self.shift = Fraction(shift)
        self.irrational = base.irrational
        if base.exact is not None:
            self.exact = base.exact + self.shift

    def _compute(self, bits):
        lo, hi = self.base.scaled(bits + 1)
        num = self.shift.numerator << (bits + 1)
        lo += num // self.shift.denominator
        hi += _ceil_div(num, self.shift.denominator)
        return lo >> 1, _ceil_shift(hi, 1)

    def descriptor(self):
        return f"{self.base.descriptor()}{'+' if self.shift >= 0 else '-'}{format_rational(abs(self.shift))}"


# ---------------------------------------------------------------------------
# integer linear combinations of oracles


class LinearForm:
    """Evaluates integer combinations ``sum c_i * alpha_i`` of fixed oracles.

    Rational oracles are carried exactly over a common denominator and the
    irrational ones through scaled enclosures, so the hot loops of the
    pigeonhole searches run on plain integers.
    """

    def __init__(self, oracles: Sequence[RealOracle], max_bits: int = DEFAULT_MAX_BITS):
        self.oracles = list(oracles)
        self.max_bits = max_bits
        dens = [o.exact.denominator for o in self.oracles if o.exact is not None]
        self.den = reduce(math.lcm, dens, 1)
        self.rat = [
            (o.exact.numerator * (self.den // o.exact.denominator)) if o.exact is not None else 0
            for o in self.oracles
        ]
        self.irr = [i for i, o in enumerate(self.oracles) if o.exact is None]
        self._bounds: dict[int, list[tuple[int, int]]] = {}

    def _scaled_bounds(self, bits: int) -> list[tuple[int, int]]:
        got = self._bounds.get(bits)
        if got is None:
            got = [self.oracles[i].scaled(bits) for i in self.irr]
            self._bounds[bits] = got
        return got

    def _sums(self, coeffs, bits: int, scale: int):
        lo = hi = 0
        for (blo, bhi), i in zip(self._scaled_bounds(bits), self.irr):
            c = coeffs[i] * scale
            if c > 0:
                lo += c * blo
                hi += c * bhi
            elif c < 0:
                lo += c * bhi
                hi += c * blo
        return lo, hi

    def _magnitude(self, coeffs, scale: int) -> int:
        return abs(scale) * sum(abs(coeffs[i]) for i in self.irr)

    def floor(self, coeffs: Sequence[int], scale: int = 1) -> int:
        """Certified ``floor(scale * sum coeffs[i] * alpha_i)``.

        Raises PrecisionExhausted when the value sits on (or too near) an
        integer for the precision cap to separate.
        """
        a = scale * sum(r * c for r, c in zip(self.rat, coeffs))
        mag = self._magnitude(coeffs, scale)
        if mag == 0:
            return a // self.den
        bits = 32 * (1 + (mag.bit_length() + 40) // 32)
        while True:
            lo, hi = self._sums(coeffs, bits, scale)
            d = self.den << bits
            base = a << bits
            low = base + self.den * lo
            m = low // d
            if base + self.den * hi < (m + 1) * d:
                return m
            if bits >= self.max_bits:
                raise PrecisionExhausted(
                    f"cannot certify floor of a combination of {[o.descriptor() for o in self.oracles]} "
                    f"at {self.max_bits} bits"
                )
            bits = min(2 * bits, self.max_bits)

    def enclosure(self, coeffs: Sequence[int], k: int, offset=0) -> DyadicInterval:
        """Enclosure of ``sum coeffs[i] * alpha_i + offset`` of width at most ``2**-k``."""
        exact = Fraction(sum(r * c for r, c in zip(self.rat, coeffs)), self.den) + Fraction(offset)
        mag = self._magnitude(coeffs, 1)
        if mag == 0:
            return DyadicInterval.point(exact)
        bits = k + (_SCALED_WIDTH * mag).bit_length()
        lo, hi = self._sums(coeffs, bits, 1)
        return DyadicInterval(exact + Fraction(lo, 1 << bits), exact + Fraction(hi, 1 << bits))

    def abs_below(self, coeffs: Sequence[int], offset, bound) -> DyadicInterval | None:
        """Certify ``|sum c_i alpha_i + offset| < bound``; return the enclosure of the
        absolute value, or None if the inequality is refuted or undecidable within the cap.
        """
        bound = Fraction(bound)
        k = 32
        while True:
            box = abs(self.enclosure(coeffs, k, offset))
            if box.hi < bound:
                return box
            if box.lo >= bound or k >= self.max_bits:
                return None
            k = min(2 * k, self.max_bits)


def compare(x: Callable[[int], DyadicInterval], y: Callable[[int], DyadicInterval],
            max_bits: int = DEFAULT_MAX_BITS) -> int:
    """Certified sign of ``x - y`` for two enclosure families (k -> interval).

    Returns -1 or 1; raises PrecisionExhausted if they cannot be separated.
    """
    k = 32
    while True:
        a, b = x(k), y(k)
        if a.hi < b.lo:
            return -1
        if a.lo > b.hi:
            return 1
        if k >= max_bits:
            raise PrecisionExhausted(f"could not separate values at {max_bits} bits")
        k = min(2 * k, max_bits)


def floor_fract(x: RealOracle, max_bits: int = DEFAULT_MAX_BITS) -> tuple[int, RealOracle]:
    """Integer part ``[x]`` and fractional part ``x - [x]`` (mathematical floor)."""
    m = LinearForm([x], max_bits=max_bits).floor([1])
    return m, Shifted(x, -m)


# ---------------------------------------------------------------------------
# primes and lcm(1..n)


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def prime_count(n: int) -> int:
    """Number of primes <= n."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    return len(primes_upto(n))


def lcm_upto(n: int) -> int:
    """V(n) = lcm(1, ..., n) as a product of maximal prime powers; V(0) = 1."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    result = 1
    for p in primes_upto(n):
        q = p
        while q * p <= n:
            q *= p
        result *= q
    return result


def lcm_sequence(n_max: int):
    """Yield ``(n, V(n))`` for n = 1..n_max, updating at prime powers only."""
    prime_power_base = {}
    for p in primes_upto(n_max):
        q = p
        while q <= n_max:
            prime_power_base[q] = p
            q *= p
    v = 1
    for n in range(1, n_max + 1):
        v *= prime_power_base.get(n, 1)
        yield n, v


def lcm_bound_violations(n_max: int) -> list[int]:
    """All n <= n_max with V(n) > 3**n, compared exactly."""
    bad = []
    three = 1
    for n, v in lcm_sequence(n_max):
        three *= 3
        vb, tb = v.bit_length(), three.bit_length()
        if vb > tb or (vb == tb and v > three):
            bad.append(n)
    return bad


def iroot(x: int, k: int) -> int:
    """floor(x ** (1/k)) for integers x >= 0, k >= 1."""
    if x < 0 or k < 1:
        raise ValueError("iroot needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    r = 1 << -(-x.bit_length() // k)  # 2**ceil(bits/k) >= true root
    while True:
        s = ((k - 1) * r + x // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def rational_power_bounds(base: int, num: int, den: int, k: int) -> DyadicInterval:
    """Enclosure of ``base ** (num/den)`` (base >= 1, num >= 0, den >= 1) of width about 2**-k."""
    scale = 1 << k
    lo = iroot(base**num * scale**den, den)
    return DyadicInterval(Fraction(lo, scale), Fraction(lo + 1, scale))

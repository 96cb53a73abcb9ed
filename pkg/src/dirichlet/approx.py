"""Pigeonhole approximation: one real, several reals, and matrices of reals.

Every search buckets certified fractional parts exactly as the classical
pigeonhole argument does and then re-checks the resulting inequality with
interval arithmetic.  If some bucket index cannot be certified within the
precision cap, the search falls back to a certified exhaustive scan.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    CertificationFailed,
    DimensionError,
    InfeasibleEnumeration,
    IrrationalRequired,
    PrecisionExhausted,
    PreconditionError,
)
from .exactnum import (
    DEFAULT_ENUM_CAP,
    DEFAULT_MAX_BITS,
    DyadicInterval,
    LinearForm,
    RealOracle,
    iroot,
    rational_power_bounds,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ApproxResult:
    """``|n * alpha - p| < 1/N`` with ``1 <= n <= N``; ``certified_error`` encloses the left side."""

    n: int
    p: int
    N: int
    certified_error: DyadicInterval
    method: str = "pigeonhole"

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.p, self.n)


@dataclass(frozen=True)
class MultiApproxResult:
    """Nonzero integer vector ``n`` (length L) and ``p`` (length M) with every
    ``|sum_l alpha[m][l] n[l] - p[m]| < 1/N`` and ``max |n[l]| <= P = floor(N**(M/L))``.
    """

    n: tuple[int, ...]
    p: tuple[int, ...]
    N: int
    P: int
    certified_errors: tuple[DyadicInterval, ...]
    method: str = "pigeonhole"


@dataclass(frozen=True)
class LinearFormResult:
    """Nonzero integer ``x`` making every form ``sum_l alpha[m][l] x[l]`` small.

    ``bound`` encloses the guaranteed majorant (2 L A N**(M/L - 1), or L A when
    N = 1); every ``certified_values[m].hi`` is at most ``bound.lo``.
    """

    x: tuple[int, ...]
    N: int
    P: int
    certified_values: tuple[DyadicInterval, ...]
    bound: DyadicInterval


def _check_n(N: int):
    if N < 1:
        raise PreconditionError(f"N must be >= 1, got {N}")


def _matrix_shape(coeffs) -> tuple[int, int]:
    M = len(coeffs)
    if M == 0:
        raise PreconditionError("need at least one row")
    L = len(coeffs[0])
    if L == 0 or any(len(row) != L for row in coeffs):
        raise PreconditionError("rows must be nonempty and of equal length")
    return M, L


# ---------------------------------------------------------------------------
# one real number


def _collision(alpha: RealOracle, N: int, form: LinearForm) -> tuple[int, int]:
    """Bucket x_j = frac(j alpha), j = 0..N, into ``[(m-1)/N, m/N)``; first collision.

    The bucket of x_j is floor(N j alpha) mod N.  For irrational alpha the
    floors come from a fixed-point enclosure of alpha accumulated exactly;
    when the enclosure straddles an integer the floor is certified by
    refinement instead.  Returns ``(n, p)`` with n = j - k the collision gap.
    """
    seen: dict[int, tuple[int, int]] = {}
    if alpha.exact is not None:
        num, den = alpha.exact.numerator, alpha.exact.denominator
        for j in range(N + 1):
            big = (N * j * num) // den
            hit = seen.setdefault(big % N, (j, big))
            if hit[0] != j:
                return j - hit[0], big // N - hit[1] // N
        raise AssertionError("pigeonhole failed")  # pragma: no cover
    bits = 32 * (1 + (2 * N * N).bit_length() // 32) + 32
    lo, hi = alpha.scaled(bits)
    step_lo, step_hi = N * lo, N * hi
    acc_lo = acc_hi = 0
    one = 1 << bits
    for j in range(N + 1):
        big = acc_lo >> bits
        if acc_hi >= (big + 1) * one:
            big = form.floor([j], scale=N)
        hit = seen.setdefault(big % N, (j, big))
        if hit[0] != j:
            return j - hit[0], big // N - hit[1] // N
        acc_lo += step_lo
        acc_hi += step_hi
    raise AssertionError("pigeonhole failed")  # pragma: no cover


def _exhaustive_dirichlet(alpha: RealOracle, N: int, form: LinearForm) -> ApproxResult:
    bound = Fraction(1, N)
    for n in range(1, N + 1):
        mid = form.enclosure([n], 32).mid
        base = mid.numerator // mid.denominator
        for p in (base, base + 1, base - 1):
            err = form.abs_below([n], -p, bound)
            if err is not None:
                return ApproxResult(n, p, N, err, method="exhaustive")
    raise PrecisionExhausted(f"no certified approximation of {alpha.descriptor()} with n <= {N}")


def dirichlet_approx(alpha: RealOracle, N: int, *, max_bits: int = DEFAULT_MAX_BITS) -> ApproxResult:
    """Find ``1 <= n <= N`` and ``p`` with certified ``|n alpha - p| < 1/N``.

    The fractional parts of ``j alpha`` (j = 0..N) are dropped into the N
    buckets ``[(m-1)/N, m/N)``; the first collision gives the answer.
    """
    _check_n(N)
    form = LinearForm([alpha], max_bits=max_bits)
    try:
        n, p = _collision(alpha, N, form)
    except PrecisionExhausted:
        log.info("bucket membership undecidable for %s; exhaustive search", alpha.descriptor())
        return _exhaustive_dirichlet(alpha, N, form)
    err = form.abs_below([n], -p, Fraction(1, N))
    if err is None:
        return _exhaustive_dirichlet(alpha, N, form)
    return ApproxResult(n, p, N, err)


# ---------------------------------------------------------------------------
# matrices


def _pigeonhole(rows: list[LinearForm], N: int, P: int, L: int, scale: Fraction) -> tuple:
    """Bucket frac(scale * row . t) for t in [0, P]^L (lexicographic order).

    Returns ``(n, p)`` from the first collision.
    """
    u, v = scale.numerator, scale.denominator
    seen: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, ...]]] = {}
    for t in itertools.product(range(P + 1), repeat=L):
        floors = tuple(row.floor(t, scale=N * u) // v for row in rows)
        key = tuple(f % N for f in floors)
        if key in seen:
            t0, f0 = seen[key]
            n = tuple(a - b for a, b in zip(t, t0))
            p = tuple(a // N - b // N for a, b in zip(floors, f0))
            return n, p
        seen[key] = (t, floors)
    raise AssertionError("pigeonhole failed")  # pragma: no cover


def _box_by_norm(P: int, L: int) -> Iterator[tuple[int, ...]]:
    """Nonzero integer vectors with max-norm <= P, by increasing norm then lexicographically."""
    for r in range(1, P + 1):
        for t in itertools.product(range(-r, r + 1), repeat=L):
            if max(map(abs, t)) == r:
                yield t


def _certify_rows(rows: list[LinearForm], n, p, bound: Fraction):
    errs = []
    for row, pm in zip(rows, p):
        err = row.abs_below(n, -pm, bound)
        if err is None:
            return None
        errs.append(err)
    return tuple(errs)


def _exhaustive_multidim(rows, N, P, L, cap) -> MultiApproxResult:
    if (2 * P + 1) ** L > cap:
        raise InfeasibleEnumeration(f"fallback box (2*{P}+1)^{L} exceeds cap {cap}")
    bound = Fraction(1, N)
    for t in _box_by_norm(P, L):
        p = []
        for row in rows:
            mid = row.enclosure(t, 32).mid
            p.append(round(mid))
        errs = _certify_rows(rows, t, p, bound)
        if errs is not None:
            return MultiApproxResult(t, tuple(p), N, P, errs, method="exhaustive")
    raise PrecisionExhausted("no certified tuple found in the fallback box")


def multidim_approx(
    coeffs: Sequence[Sequence[RealOracle]],
    N: int,
    *,
    max_bits: int = DEFAULT_MAX_BITS,
    cap: int = DEFAULT_ENUM_CAP,
) -> MultiApproxResult:
    """Simultaneously make M linear forms in L integer unknowns close to integers.

    Enumerates ``(P+1)**L`` tuples in ``[0, P]**L`` with ``P = floor(N**(M/L))``
    and buckets their fractional-part vectors into the ``N**M`` subcubes of
    ``[0, 1)**M``.
    """
    _check_n(N)
    M, L = _matrix_shape(coeffs)
    P = iroot(N**M, L)
    if (P + 1) ** L > cap:
        raise InfeasibleEnumeration(f"box ({P}+1)^{L} exceeds enumeration cap {cap}")
    rows = [LinearForm(row, max_bits=max_bits) for row in coeffs]
    try:
        n, p = _pigeonhole(rows, N, P, L, Fraction(1))
    except PrecisionExhausted:
        log.info("subcube membership undecidable; exhaustive search")
        return _exhaustive_multidim(rows, N, P, L, cap)
    errs = _certify_rows(rows, n, p, Fraction(1, N))
    if errs is None:
        return _exhaustive_multidim(rows, N, P, L, cap)
    return MultiApproxResult(n, p, N, P, errs)


def simultaneous_approx(alphas: Sequence[RealOracle], N: int, **kw) -> MultiApproxResult:
    """One denominator ``n <= N**L`` with every ``|alpha_l - p_l/n| < 1/(N n)``."""
    if not alphas:
        raise PreconditionError("need at least one real")
    return multidim_approx([[a] for a in alphas], N, **kw)


def linear_form_approx(alphas: Sequence[RealOracle], N: int, **kw) -> MultiApproxResult:
    """Nonzero ``n`` with ``max |n_l| <= N**(1/L)`` and ``|sum alpha_l n_l - p| < 1/N``."""
    if not alphas:
        raise PreconditionError("need at least one real")
    return multidim_approx([list(alphas)], N, **kw)


# ---------------------------------------------------------------------------
# small linear forms


def _max_abs_upper(coeffs, k: int) -> Fraction:
    return max(max(abs(a.enclosure(k)).hi for a in row) for row in coeffs)


def _max_abs_interval(coeffs, k: int) -> DyadicInterval:
    boxes = [abs(a.enclosure(k)) for row in coeffs for a in row]
    return DyadicInterval(max(b.lo for b in boxes), max(b.hi for b in boxes))


def _forms_bound(M: int, L: int, N: int, coeffs, k: int) -> DyadicInterval:
    """Enclosure of 2 L A N**(M/L - 1), or L A when N = 1."""
    big_a = _max_abs_interval(coeffs, k)
    if N == 1:
        return L * big_a
    root = rational_power_bounds(N, M, L, k)  # N**(M/L)
    return (2 * L) * big_a * root * Fraction(1, N)


def small_linear_forms(
    coeffs: Sequence[Sequence[RealOracle]],
    N: int,
    *,
    max_bits: int = DEFAULT_MAX_BITS,
    cap: int = DEFAULT_ENUM_CAP,
) -> LinearFormResult:
    """Nonzero ``x`` with ``max |x_l| <= N**(M/L)`` and every
    ``|sum_l alpha[m][l] x[l]| <= 2 L A N**(M/L - 1)``, A the largest ``|alpha[m][l]|``.

    Requires M < L.  The forms are rescaled by a rational factor below
    ``(1 - 1/N) / (L A P)`` so that the pigeonhole integers are forced to 0.
    """
    _check_n(N)
    M, L = _matrix_shape(coeffs)
    if M >= L:
        raise DimensionError(f"need M < L, got M={M}, L={L}")
    P = iroot(N**M, L)
    rows = [LinearForm(row, max_bits=max_bits) for row in coeffs]

    big_a = _max_abs_upper(coeffs, 64)
    x = None
    if big_a == 0 or N == 1:
        x = (1,) + (0,) * (L - 1)
    elif (P + 1) ** L > cap:
        raise InfeasibleEnumeration(f"box ({P}+1)^{L} exceeds enumeration cap {cap}")
    else:
        scale = (1 - Fraction(1, N)) / (L * big_a * P)
        try:
            x, p = _pigeonhole(rows, N, P, L, scale)
        except PrecisionExhausted:
            log.info("scaled subcube membership undecidable; exhaustive search")
        else:
            if any(p):
                raise CertificationFailed(f"scaled pigeonhole left nonzero integers {p}")
    certified = _certify_small(rows, coeffs, x, M, L, N, max_bits) if x is not None else None
    if certified is None:
        x, certified = _exhaustive_small(rows, coeffs, M, L, N, P, cap, max_bits)
    values, bound = certified
    return LinearFormResult(tuple(x), N, P, values, bound)


def _certify_small(rows, coeffs, x, M, L, N, max_bits):
    k = 32
    while True:
        values = tuple(abs(row.enclosure(x, k)) for row in rows)
        bound = _forms_bound(M, L, N, coeffs, k)
        if all(v.hi <= bound.lo for v in values):
            return values, bound
        if any(v.lo > bound.hi for v in values) or k >= max_bits:
            return None
        k = min(2 * k, max_bits)


def _exhaustive_small(rows, coeffs, M, L, N, P, cap, max_bits):
    if (2 * P + 1) ** L > cap:
        raise InfeasibleEnumeration(f"fallback box (2*{P}+1)^{L} exceeds cap {cap}")
    for t in _box_by_norm(max(P, 1), L):
        certified = _certify_small(rows, coeffs, t, M, L, N, max_bits)
        if certified is not None:
            return t, certified
    raise PrecisionExhausted("no certified small vector found in the box")


# ---------------------------------------------------------------------------
# infinitely many good approximations


def iter_good_approximations(alpha: RealOracle, *, max_bits: int = DEFAULT_MAX_BITS) -> Iterator[Fraction]:
    """Reduced fractions p/n with strictly increasing n and certified ``|alpha - p/n| < 1/n**2``.

    Runs the one-dimensional pigeonhole search with N = 1, 2, 4, ...
    """
    if not alpha.irrational:
        raise IrrationalRequired(f"{alpha.descriptor()} is not known to be irrational")
    return _good_approximations(alpha, max_bits)


def _good_approximations(alpha: RealOracle, max_bits: int) -> Iterator[Fraction]:
    form = LinearForm([alpha], max_bits=max_bits)
    last = 0
    N = 1
    while True:
        res = dirichlet_approx(alpha, N, max_bits=max_bits)
        g = gcd(res.n, res.p)
        n, p = res.n // g, res.p // g
        if n > last:
            if form.abs_below([n], -p, Fraction(1, n)) is None:
                raise CertificationFailed(f"|{alpha.descriptor()} - {p}/{n}| < 1/{n}^2 not certified")
            last = n
            yield Fraction(p, n)
        N *= 2


def good_approx_stream(alpha: RealOracle, count: int, *, max_bits: int = DEFAULT_MAX_BITS) -> list[Fraction]:
    if count < 0:
        raise PreconditionError("count must be >= 0")
    return list(itertools.islice(iter_good_approximations(alpha, max_bits=max_bits), count))

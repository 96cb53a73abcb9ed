"""Small nonzero integer solutions of underdetermined integer systems A x = 0."""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionError, InfeasibleEnumeration, PreconditionError
from .exactnum import DEFAULT_ENUM_CAP, DyadicInterval, iroot, rational_power_bounds

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntLinearSystem:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in row) for row in self.entries)
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise PreconditionError("matrix must be nonempty and rectangular")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntLinearSystem:
        return cls(tuple(tuple(r) for r in rows))

    @property
    def M(self) -> int:
        return len(self.entries)

    @property
    def L(self) -> int:
        return len(self.entries[0])

    @property
    def A(self) -> int:
        return max(abs(a) for row in self.entries for a in row)

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, x)) for row in self.entries)

    def in_kernel(self, x: Sequence[int]) -> bool:
        return not any(self.apply(x))


def siegel_N(system: IntLinearSystem) -> int:
    """``N = [(2 L A)^(L/(L-M))] + 1``, the smallest integer making 2 L A N^(M/L - 1) < 1."""
    M, L = system.M, system.L
    return iroot((2 * L * system.A) ** L, L - M) + 1


@dataclass(frozen=True)
class SiegelSolution:
    """Nonzero kernel vector with ``max |x_l| <= N^(M/L)``.

    The bound is irrational in general; it is kept as ``N``, ``M``, ``L`` and
    checked exactly as ``max|x_l|^L <= N^M``.
    """

    x: tuple[int, ...]
    N: int
    M: int
    L: int
    method: str = "pigeonhole"

    @property
    def height(self) -> int:
        return max(abs(v) for v in self.x)

    def within_bound(self) -> bool:
        return self.height**self.L <= self.N**self.M

    def bound(self, k: int = 53) -> DyadicInterval:
        return rational_power_bounds(self.N, self.M, self.L, k)


def _check_dims(system: IntLinearSystem):
    if system.M >= system.L:
        raise DimensionError(f"need fewer equations than unknowns, got M={system.M}, L={system.L}")


def _unit(L: int) -> tuple[int, ...]:
    return (1,) + (0,) * (L - 1)


def _pigeonhole(system: IntLinearSystem, P: int) -> tuple[int, ...]:
    """First exact collision of images over [0, P]^L in lexicographic order."""
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    for t in itertools.product(range(P + 1), repeat=system.L):
        img = system.apply(t)
        prev = seen.setdefault(img, t)
        if prev is not t:
            return tuple(a - b for a, b in zip(t, prev))
    raise AssertionError("pigeonhole failed")  # pragma: no cover


def _canonical(x: Sequence[int]) -> tuple[int, ...]:
    x = tuple(int(v) for v in x)
    for v in x:
        if v:
            return x if v > 0 else tuple(-w for w in x)
    return x


def _echelon(system: IntLinearSystem) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and its pivot columns."""
    rows = [[Fraction(a) for a in row] for row in system.entries]
    pivots = []
    r = 0
    for col in range(system.L):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[: len(pivots)], pivots


def integer_kernel_basis(system: IntLinearSystem) -> list[tuple[int, ...]]:
    """Primitive integer vectors spanning the rational kernel (exact elimination)."""
    rows, pivots = _echelon(system)
    L = system.L
    basis = []
    for fcol in (c for c in range(L) if c not in pivots):
        vec = [Fraction(0)] * L
        vec[fcol] = Fraction(1)
        for i, pcol in enumerate(pivots):
            vec[pcol] = -rows[i][fcol]
        den = math.lcm(*(v.denominator for v in vec))
        ints = [int(v * den) for v in vec]
        g = math.gcd(*ints)
        basis.append(_canonical([v // g for v in ints]))
    return basis


def _shell(r: int, L: int) -> np.ndarray:
    """All integer vectors of max-norm exactly r, as rows of an array."""
    parts = []
    inner = np.arange(-(r - 1), r)
    full = np.arange(-r, r + 1)
    # j is the first coordinate reaching |x_j| = r
    for j in range(L):
        axes = [inner] * j + [np.array([-r, r])] + [full] * (L - j - 1)
        grids = np.meshgrid(*axes, indexing="ij")
        parts.append(np.stack([g.ravel() for g in grids], axis=1))
    return np.concatenate(parts).astype(np.int64)


def _kernel_search(system: IntLinearSystem, limit: int, cap: int) -> tuple[int, ...] | None:
    """Smallest max-norm nonzero kernel vector with norm <= limit.

    A kernel vector is fixed by its free (non-pivot) coordinates, so only
    those are enumerated, shell by shell; the pivot coordinates follow from
    the echelon form and must come out integral.  A vector of norm h has free
    coordinates of norm <= h, so the scan can stop once the shell index
    passes the best norm found.
    """
    rows, pivots = _echelon(system)
    L = system.L
    free = [c for c in range(L) if c not in pivots]
    den = math.lcm(1, *(v.denominator for row in rows for v in row))
    # den * x_pivot = -coef @ x_free
    coef = [[int(-rows[i][f] * den) for f in free] for i in range(len(pivots))]
    big = max((abs(v) for row in coef for v in row), default=0)
    if (big + den) * len(free) * max(limit, 1) >= 2**62:
        raise InfeasibleEnumeration("coefficients too large for the vectorised kernel search")
    coef_arr = np.array(coef, dtype=np.int64).reshape(len(pivots), len(free))
    best: tuple[int, tuple[int, ...]] | None = None
    visited = 0
    for r in range(1, limit + 1):
        if best is not None and r > best[0]:
            break
        pts = _shell(r, len(free))
        visited += len(pts)
        if visited > cap:
            raise InfeasibleEnumeration(f"kernel search passed the cap {cap} at norm {r}")
        num = pts @ coef_arr.T
        ok = (num % den == 0).all(axis=1)
        if not ok.any():
            continue
        full = np.zeros((int(ok.sum()), L), dtype=np.int64)
        full[:, free] = pts[ok]
        full[:, pivots] = num[ok] // den
        norms = np.abs(full).max(axis=1)
        keep = norms <= limit
        if not keep.any():
            continue
        h = int(norms[keep].min())
        cand = min(_canonical(v) for v in full[keep][norms[keep] == h])
        if best is None or (h, cand) < best:
            best = (h, cand)
    if best is None:
        return None
    x = best[1]
    if not system.in_kernel(x):
        raise AssertionError("kernel search produced a non-kernel vector")  # pragma: no cover
    return x


def siegel_solve(system: IntLinearSystem, *, cap: int = DEFAULT_ENUM_CAP) -> SiegelSolution:
    """Nonzero integer x with A x = 0 and ``max |x_l| <= ([(2 L A)^(L/(L-M))] + 1)^(M/L)``.

    Enumerates ``[0, P]^L`` with ``P = [N^(M/L)]`` and returns the difference of
    the first two tuples with equal images; integer images that are closer
    than 1 are equal.  If the box exceeds ``cap``, searches the kernel
    directly in increasing max-norm order (see :func:`_kernel_search`).
    """
    _check_dims(system)
    M, L = system.M, system.L
    if system.A == 0:
        return SiegelSolution(_unit(L), 1, M, L, method="zero-matrix")
    N = siegel_N(system)
    P = iroot(N**M, L)
    if (P + 1) ** L <= cap:
        x = _pigeonhole(system, P)
        return SiegelSolution(x, N, M, L)
    log.info("box (%d+1)^%d exceeds cap; kernel search", P, L)
    x = _kernel_search(system, P, cap)
    if x is None:  # pragma: no cover - excluded by the lemma
        raise AssertionError("no kernel vector inside the Siegel box")
    return SiegelSolution(x, N, M, L, method="kernel")


def siegel_brute_min(system: IntLinearSystem, cap: int) -> tuple[int, ...] | None:
    """Smallest max-norm nonzero kernel vector with entries at most ``cap``.

    Ties go to the lexicographically smallest vector whose first nonzero entry
    is positive.  Returns None if there is none within ``cap``.
    """
    _check_dims(system)
    return _kernel_search(system, cap, cap=2**63)

import itertools
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirichlet.approx import (
    dirichlet_approx,
    good_approx_stream,
    iter_good_approximations,
    linear_form_approx,
    multidim_approx,
    simultaneous_approx,
    small_linear_forms,
)
from dirichlet.cli import parse_real
from dirichlet.errors import InfeasibleEnumeration, IrrationalRequired, PreconditionError
from dirichlet.exactnum import EulerE, Rational, Sqrt, rational_power_bounds

from oracles import mp_value

R = lambda q: Rational(Fraction(q))  # noqa: E731


def frac_dist(v):
    return abs(v - mpmath.nint(v))


def brute_simul(values, N, n_max):
    """Some n <= n_max with every |n v - p| < 1/N."""
    return [n for n in range(1, n_max + 1) if all(frac_dist(n * v) < mpmath.mpf(1) / N for v in values)]


def brute_box(rows, N, P):
    hits = []
    for n in itertools.product(range(-P, P + 1), repeat=len(rows[0])):
        if any(n) and all(frac_dist(sum(a * b for a, b in zip(row, n))) < mpmath.mpf(1) / N for row in rows):
            hits.append(n)
    return hits


def check_approx(r, alpha_desc, N):
    assert 1 <= r.n <= N
    assert r.certified_error.hi < Fraction(1, N)
    true = abs(r.n * mp_value(alpha_desc) - r.p)
    assert mpmath.mpf(r.certified_error.lo.numerator) / r.certified_error.lo.denominator <= true + 1e-60


# ---------------------------------------------------------------------------
# one dimension


def test_one_third():
    r = dirichlet_approx(R("1/3"), 3)
    assert (r.n, r.p) == (3, 1)
    assert r.certified_error.hi == 0


def test_integer_alpha():
    r = dirichlet_approx(R(5), 7)
    assert (r.n, r.p) == (1, 5)
    assert r.certified_error.hi == 0


def test_sqrt2_n5():
    r = dirichlet_approx(Sqrt(2), 5)
    check_approx(r, "sqrt:2", 5)
    assert r.n in brute_simul([mpmath.sqrt(2)], 5, 5)


def test_n_equal_one():
    r = dirichlet_approx(Sqrt(2), 1)
    assert r.n == 1 and r.certified_error.hi < 1


def test_bad_n():
    with pytest.raises(PreconditionError):
        dirichlet_approx(Sqrt(2), 0)


reals = st.one_of(
    st.fractions(max_denominator=500).filter(lambda q: abs(q) < 1000).map(lambda q: f"rat:{q}"),
    st.integers(2, 1000).filter(lambda c: math.isqrt(c) ** 2 != c).map(lambda c: f"sqrt:{c}"),
    st.sampled_from(["e", "zeta2", "zeta3"]),
)


@settings(max_examples=80, deadline=None)
@given(reals, st.integers(1, 10**4))
def test_dirichlet_contract(desc, N):
    check_approx(dirichlet_approx(parse_real(desc), N), desc, N)


@settings(max_examples=30, deadline=None)
@given(reals, st.integers(1, 200))
def test_multidim_1x1_same_contract(desc, N):
    alpha = parse_real(desc)
    r1 = dirichlet_approx(alpha, N)
    r2 = multidim_approx([[alpha]], N)
    check_approx(r1, desc, N)
    assert r2.P == N and 1 <= abs(r2.n[0]) <= N
    assert r2.certified_errors[0].hi < Fraction(1, N)


# ---------------------------------------------------------------------------
# several dimensions


def test_simultaneous_exact():
    r = simultaneous_approx([R("1/2"), R("1/4")], 4)
    assert all(e.hi < Fraction(1, 4) for e in r.certified_errors)
    n = r.n[0]
    assert 1 <= abs(n) <= 16
    for q, p in zip((Fraction(1, 2), Fraction(1, 4)), r.p):
        assert abs(n * q - p) < Fraction(1, 4)


def test_simultaneous_sqrt2_sqrt3():
    r = simultaneous_approx([Sqrt(2), Sqrt(3)], 2)
    n = abs(r.n[0])
    assert 1 <= n <= 4
    assert n in brute_simul([mpmath.sqrt(2), mpmath.sqrt(3)], 2, 4)
    assert all(e.hi < Fraction(1, 2) for e in r.certified_errors)


def test_simultaneous_single_is_dirichlet():
    r = simultaneous_approx([EulerE()], 3)
    assert 1 <= abs(r.n[0]) <= 3 and r.certified_errors[0].hi < Fraction(1, 3)


def test_multidim_column():
    r = multidim_approx([[Sqrt(2)], [Sqrt(3)]], 3)
    assert 1 <= abs(r.n[0]) <= 9
    assert abs(r.n[0]) in brute_simul([mpmath.sqrt(2), mpmath.sqrt(3)], 3, 9)


def test_linear_form_half():
    r = linear_form_approx([R("1/2")], 2)
    assert r.n[0] in (-1, 1, -2, 2) and abs(r.n[0]) <= r.P == 2


@pytest.mark.parametrize("alphas", [["sqrt:2", "sqrt:2"], ["sqrt:2", "sqrt:3"]])
def test_linear_form_box(alphas):
    r = linear_form_approx([parse_real(a) for a in alphas], 4)
    assert r.P == 2 and any(r.n) and max(map(abs, r.n)) <= 2
    assert r.certified_errors[0].hi < Fraction(1, 4)
    hits = brute_box([[mp_value(a) for a in alphas]], 4, 2)
    assert tuple(r.n) in hits


def test_multidim_cap():
    with pytest.raises(InfeasibleEnumeration):
        multidim_approx([[Sqrt(2), Sqrt(3), Sqrt(5)]], 10**6, cap=1000)


def test_ragged_matrix():
    with pytest.raises(PreconditionError):
        multidim_approx([[Sqrt(2)], [Sqrt(3), Sqrt(5)]], 3)


descs = st.sampled_from(["sqrt:2", "sqrt:3", "sqrt:7", "e", "zeta2", "zeta3", "rat:1/3", "rat:-5/7", "rat:2"])


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 20), st.data())
def test_multidim_contract_and_box(M, L, N, data):
    descs_m = [[data.draw(descs) for _ in range(L)] for _ in range(M)]
    coeffs = [[parse_real(d) for d in row] for row in descs_m]
    r = multidim_approx(coeffs, N)
    P = r.P
    assert P**L <= N**M < (P + 1) ** L
    assert any(r.n) and max(map(abs, r.n)) <= P
    for m, row in enumerate(descs_m):
        v = sum(mp_value(d) * n for d, n in zip(row, r.n)) - r.p[m]
        assert abs(v) < mpmath.mpf(1) / N
        assert r.certified_errors[m].hi < Fraction(1, N)


# ---------------------------------------------------------------------------
# small linear forms


def test_small_forms_zero_matrix():
    r = small_linear_forms([[R(0), R(0)]], 2)
    assert r.x == (1, 0)
    assert all(v.hi == 0 for v in r.certified_values)


def test_small_forms_ones():
    r = small_linear_forms([[R(1), R(1)]], 2)
    assert any(r.x) and max(map(abs, r.x)) <= 1
    bound = 2 * 2 * 1 * mpmath.power(2, -0.5)
    assert abs(sum(r.x)) <= bound
    assert r.certified_values[0].hi <= r.bound.lo


def test_small_forms_sqrt():
    r = small_linear_forms([[Sqrt(2), Sqrt(3)]], 4)
    assert any(r.x) and max(map(abs, r.x)) <= 2
    val = abs(r.x[0] * mpmath.sqrt(2) + r.x[1] * mpmath.sqrt(3))
    assert val <= 2 * 2 * mpmath.sqrt(3) * mpmath.power(4, -0.5)


def test_small_forms_n1_bound():
    r = small_linear_forms([[Sqrt(2), Sqrt(3)]], 1)
    assert r.bound.lo <= 2 * Fraction(17320508, 10**7) + Fraction(1, 10**6)


def test_small_forms_needs_m_less_than_l():
    with pytest.raises(PreconditionError):
        small_linear_forms([[Sqrt(2)], [Sqrt(3)]], 3)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(1, 12), st.data())
def test_small_forms_never_exceed_bound(L, N, data):
    M = data.draw(st.integers(1, L - 1))
    descs_m = [[data.draw(descs) for _ in range(L)] for _ in range(M)]
    r = small_linear_forms([[parse_real(d) for d in row] for row in descs_m], N)
    assert any(r.x)
    P = r.P
    assert P**L <= N**M
    assert max(map(abs, r.x)) <= P
    A = max(abs(mp_value(d)) for row in descs_m for d in row)
    bound = L * A if N == 1 else 2 * L * A * mpmath.power(N, mpmath.mpf(M) / L - 1)
    for row, box in zip(descs_m, r.certified_values):
        v = abs(sum(mp_value(d) * x for d, x in zip(row, r.x)))
        assert v <= bound
        assert box.hi <= r.bound.lo


# ---------------------------------------------------------------------------
# approximation stream


def test_stream_sqrt2():
    fracs = good_approx_stream(Sqrt(2), 5)
    assert fracs[:3] == [Fraction(1), Fraction(4, 3), Fraction(7, 5)]
    for f in fracs:
        assert abs(mpmath.sqrt(2) - mpmath.mpf(f.numerator) / f.denominator) < mpmath.mpf(1) / f.denominator**2


def test_stream_sqrt5_single():
    (f,) = good_approx_stream(Sqrt(5), 1)
    assert abs(mpmath.sqrt(5) - mpmath.mpf(f.numerator) / f.denominator) < mpmath.mpf(1) / f.denominator**2


def test_stream_rejects_rational():
    with pytest.raises(IrrationalRequired):
        good_approx_stream(R("1/2"), 1)
    with pytest.raises(IrrationalRequired):
        iter_good_approximations(Sqrt(4))


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(["sqrt:2", "sqrt:13", "e", "zeta2", "zeta3", "cantor:factorial"]), st.integers(1, 12))
def test_stream_properties(desc, count):
    fracs = good_approx_stream(parse_real(desc), count)
    assert len(fracs) == count == len(set(fracs))
    qs = [f.denominator for f in fracs]
    assert all(a < b for a, b in zip(qs, qs[1:]))
    v = mp_value(desc)
    for f in fracs:
        assert math.gcd(f.numerator, f.denominator) == 1
        assert abs(v - mpmath.mpf(f.numerator) / f.denominator) < mpmath.mpf(1) / f.denominator**2


def test_power_bound_helper_matches_root():
    box = rational_power_bounds(17, 1, 2, 40)
    assert box.lo**2 <= 17 <= box.hi**2

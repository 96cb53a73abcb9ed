import math
from fractions import Fraction
from functools import reduce

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirichlet.errors import PrecisionExhausted, PreconditionError
from dirichlet.exactnum import (
    DyadicInterval,
    EulerE,
    LinearForm,
    Rational,
    Shifted,
    Sqrt,
    Zeta2,
    Zeta3,
    floor_fract,
    format_rational,
    iroot,
    lcm_bound_violations,
    lcm_sequence,
    lcm_upto,
    parse_rational,
    prime_count,
    primes_upto,
    rational_power_bounds,
)

from oracles import mp_value, mpf, slow_e, slow_zeta2, slow_zeta3

rationals = st.fractions(max_denominator=10**6).filter(lambda q: abs(q) < 10**6)
irrational_oracles = st.sampled_from(["sqrt:2", "sqrt:3", "sqrt:991", "e", "zeta2", "zeta3"])


def make(desc):
    from dirichlet.cli import parse_real

    return parse_real(desc)


def test_rational_enclosure_is_point():
    box = Rational(Fraction(1, 3)).enclosure(4)
    assert box.lo == box.hi == Fraction(1, 3)


def test_sqrt2_k10():
    box = Sqrt(2).enclosure(10)
    assert box.width <= Fraction(1, 1024)
    assert Fraction("1.4130") <= box.lo and box.hi <= Fraction("1.4150")
    assert box.lo**2 <= 2 <= box.hi**2


def test_zeta2_k20_against_slow_series():
    box = Zeta2().enclosure(20)
    lo, hi = slow_zeta2(2000)
    # both contain zeta(2), so they overlap
    assert box.lo <= hi and lo <= box.hi
    assert abs(float(box.mid) - 1.644934) < 1e-6


@pytest.mark.parametrize("k", [0, 1, 5, 30, 100, 400])
def test_slow_tail_oracles_contain_fast_enclosures(k):
    for fast, slow in ((Zeta2(), slow_zeta2(300)), (Zeta3(), slow_zeta3(300)), (EulerE(), slow_e(60))):
        box = fast.enclosure(k)
        assert box.lo <= slow[1] and slow[0] <= box.hi


@settings(max_examples=60, deadline=None)
@given(irrational_oracles, st.integers(0, 600))
def test_enclosure_contains_value_and_has_width(desc, k):
    mpmath.mp.dps = 220
    x = make(desc)
    box = x.enclosure(k)
    assert box.width <= Fraction(1, 2**k)
    v = mp_value(desc)
    assert mpf(box.lo) <= v <= mpf(box.hi)
    mpmath.mp.dps = 80


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 10**6).filter(lambda c: math.isqrt(c) ** 2 != c), st.integers(0, 300))
def test_sqrt_enclosure_by_squaring(c, k):
    box = Sqrt(c).enclosure(k)
    assert box.lo**2 <= c <= box.hi**2
    assert box.width <= Fraction(1, 2**k)


def test_enclosures_consistent_across_precisions():
    # cached refinement must not change the answer
    fresh = [Zeta3().enclosure(k) for k in (10, 200, 50)]
    shared = Zeta3()
    cached = [shared.enclosure(k) for k in (200, 10, 50)]
    assert fresh[0] == cached[1] or (fresh[0].lo <= cached[1].hi and cached[1].lo <= fresh[0].hi)
    for a in fresh + cached:
        for b in fresh + cached:
            assert a.lo <= b.hi


def test_perfect_square_sqrt_is_rational():
    assert isinstance(Sqrt(49), Rational)
    assert Sqrt(49).exact == 7
    with pytest.raises(PreconditionError):
        Sqrt(-2)


@pytest.mark.parametrize(
    "x, expected",
    [(Rational(Fraction(7, 3)), (2, Fraction(1, 3))), (Rational(Fraction(-1, 2)), (-1, Fraction(1, 2))),
     (Rational(5), (5, Fraction(0)))],
)
def test_floor_fract_rational(x, expected):
    m, frac = floor_fract(x)
    assert m == expected[0]
    assert frac.exact == expected[1]


def test_floor_fract_sqrt2():
    m, frac = floor_fract(Sqrt(2))
    assert m == 1
    box = frac.enclosure(60)
    assert 0 < box.lo and box.hi < 1
    assert abs(float(box.mid) - (math.sqrt(2) - 1)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(irrational_oracles, rationals)
def test_floor_fract_in_unit_interval(desc, shift):
    x = Shifted(make(desc), shift)
    m, frac = floor_fract(x)
    box = frac.enclosure(64)
    assert 0 <= box.lo and box.hi < 1
    xb = x.enclosure(64)
    assert m <= xb.hi and xb.lo < m + 1


def test_floor_of_hidden_integer_exhausts_precision():
    # sqrt(2) - sqrt(2) is an integer the oracle cannot recognise
    form = LinearForm([Sqrt(2), Sqrt(2)], max_bits=128)
    with pytest.raises(PrecisionExhausted):
        form.floor([1, -1])


@settings(max_examples=200)
@given(rationals, rationals, rationals)
def test_rational_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert parse_rational(format_rational(a)) == a
    assert math.gcd(a.numerator, a.denominator) == 1 and a.denominator >= 1


@given(st.integers(-(10**40), 10**40))
def test_bigint_decimal_roundtrip(n):
    assert int(str(n)) == n
    assert format_rational(n) == str(n)
    assert format_rational(0) == "0"


def test_parse_rational_rejects_garbage():
    with pytest.raises(PreconditionError):
        parse_rational("1/0")
    with pytest.raises(PreconditionError):
        parse_rational("abc")


@settings(max_examples=100)
@given(rationals, rationals, rationals, rationals)
def test_interval_arithmetic_contains_pointwise(a, b, c, d):
    x = DyadicInterval(min(a, b), max(a, b))
    y = DyadicInterval(min(c, d), max(c, d))
    for u in (a, b):
        for v in (c, d):
            assert u + v in x + y
            assert u - v in x - y
            assert u * v in x * y
        assert abs(u) in abs(x)
        assert u**3 in x**3


def test_interval_rejects_empty():
    with pytest.raises(ValueError):
        DyadicInterval(1, 0)


def test_interval_json():
    assert DyadicInterval(Fraction(1, 4), 3).to_json() == ["1/4", "3"]


# ---------------------------------------------------------------------------
# primes and lcm


def pairwise_lcm(n):
    return reduce(math.lcm, range(1, n + 1), 1)


@pytest.mark.parametrize("n, v", [(1, 1), (2, 2), (10, 2520), (20, 232792560)])
def test_lcm_upto_examples(n, v):
    assert lcm_upto(n) == v == pairwise_lcm(n)


def test_lcm_sequence_recurrences():
    seq = [1] + [v for _, v in lcm_sequence(10**4)]
    for n in range(1, 10**4 + 1):
        assert seq[n] == math.lcm(seq[n - 1], n)
        assert (seq[n - 1] * n) % seq[n - 1] == 0
        assert (seq[n] * (n + 1)) % seq[n] == 0
    for n in (1, 7, 100, 999):
        assert seq[n] == pairwise_lcm(n)


@pytest.mark.parametrize("n, count", [(0, 0), (1, 0), (2, 1), (10, 4), (100, 25), (10**4, 1229)])
def test_prime_count(n, count):
    assert prime_count(n) == count


def test_primes_match_trial_division():
    expected = [p for p in range(2, 500) if all(p % d for d in range(2, math.isqrt(p) + 1))]
    assert primes_upto(499) == expected


def test_lcm_bound_small():
    assert lcm_bound_violations(2000) == []
    assert all(pairwise_lcm(n) <= 3**n for n in range(1, 200))


@given(st.integers(0, 10**60), st.integers(1, 7))
def test_iroot(x, k):
    r = iroot(x, k)
    assert r**k <= x < (r + 1) ** k


@given(st.integers(1, 500), st.integers(1, 4), st.integers(1, 4), st.integers(0, 80))
def test_rational_power_bounds(base, num, den, k):
    box = rational_power_bounds(base, num, den, k)
    mpmath.mp.dps = 60
    v = mpmath.power(base, mpmath.mpf(num) / den)
    assert mpf(box.lo) <= v <= mpf(box.hi)
    mpmath.mp.dps = 80

from fractions import Fraction
from math import sqrt as fsqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charsub.circle import CircleInterval, circle, golden_ratio, in_t_plus, norm, signed_rep, sqrt
from charsub.padic import PAdic, fractional_part, valuation

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=200)


def test_circle_reduces_mod_one():
    assert circle(Fraction(7, 3)) == Fraction(1, 3)
    assert circle(Fraction(-1, 4)) == Fraction(3, 4)


def test_norm_and_signed_rep():
    assert norm(Fraction(3, 4)) == Fraction(1, 4)
    assert signed_rep(Fraction(3, 4)) == Fraction(-1, 4)
    assert signed_rep(Fraction(1, 2)) in (Fraction(1, 2), Fraction(-1, 2))
    assert norm(Fraction(1, 2)) == Fraction(1, 2)


def test_t_plus_boundary():
    assert in_t_plus(Fraction(1, 4))
    assert in_t_plus(Fraction(3, 4))
    assert not in_t_plus(Fraction(1, 3))


@settings(max_examples=200, deadline=None)
@given(fractions, fractions)
def test_norm_is_subadditive(a, b):
    assert norm(circle(a + b)) <= norm(circle(a)) + norm(circle(b))


@settings(max_examples=200, deadline=None)
@given(fractions)
def test_norm_is_distance_to_nearest_integer(a):
    # oracle: distance to round(a) computed directly
    nearest = min(abs(a - k) for k in range(int(a) - 2, int(a) + 3))
    assert norm(circle(a)) == nearest


def test_golden_ratio_enclosure():
    phi = golden_ratio()
    for level in (1, 10, 40):
        lo, hi = phi.bounds(level)
        assert lo <= Fraction((1 + fsqrt(5)) / 2) + Fraction(1, 10**12)
        assert hi >= Fraction((1 + fsqrt(5)) / 2) - Fraction(1, 10**12)
        assert hi - lo <= Fraction(1, 2**level)
        # exact check: lo^2 - lo - 1 <= 0 <= hi^2 - hi - 1
        assert lo * lo - lo - 1 <= 0 <= hi * hi - hi - 1


def test_sqrt_of_square_is_exact():
    lo, hi = sqrt(9).bounds(5)
    assert lo == hi == 3


def test_circle_interval_norm_bounds_contain_true_value():
    x = CircleInterval(golden_ratio(), multiplier=13)
    lo, hi = x.norm_bounds()
    true = abs(13 * (1 + fsqrt(5)) / 2 - round(13 * (1 + fsqrt(5)) / 2))
    assert float(lo) - 1e-12 <= true <= float(hi) + 1e-12


def test_valuation():
    assert valuation(Fraction(12), 2) == 2
    assert valuation(Fraction(1, 18), 3) == -2
    assert valuation(0, 5) is None


def _fractional_part_oracle(x, p):
    # the r / p^k in [0, 1) with x - r / p^k having no p in the denominator
    x = Fraction(x)
    k = 0
    d = x.denominator
    while d % p == 0:
        d //= p
        k += 1
    for r in range(p**k):
        if (x - Fraction(r, p**k)).denominator % p:
            return Fraction(r, p**k)
    return Fraction(0)


@settings(max_examples=200, deadline=None)
@given(st.integers(-500, 500), st.integers(1, 200), st.sampled_from([2, 3, 5, 7]))
def test_fractional_part_matches_oracle(num, den, p):
    x = Fraction(num, den)
    assert fractional_part(x, p) == _fractional_part_oracle(x, p)


def test_padic_point_requires_prime():
    with pytest.raises(ValueError):
        PAdic(4, Fraction(1))

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diophant.errors import UsageError
from diophant.roots import (
    int_nth_root,
    interval_div_pos,
    interval_mul,
    ln_interval,
    rational_power_ceil,
    rational_power_floor,
    sqrt_interval,
)


@given(st.integers(min_value=0, max_value=10**18), st.integers(min_value=1, max_value=7))
@settings(max_examples=120, deadline=None)
def test_int_nth_root(n, k):
    r = int_nth_root(n, k)
    assert r**k <= n
    assert (r + 1) ** k > n


def test_power_floor_exact_cases():
    r, exact = rational_power_floor(Fraction(1024), 1, 5)
    assert exact and r == 4
    r, exact = rational_power_floor(Fraction(27, 8), 2, 3)
    assert exact and r == Fraction(9, 4)


@given(
    st.fractions(min_value="1/100", max_value=10**6, max_denominator=10**4),
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=1, max_value=5),
)
@settings(max_examples=60, deadline=None)
def test_power_floor_and_ceil_bracket(x, num, den):
    lo, _ = rational_power_floor(x, num, den)
    hi, _ = rational_power_ceil(x, num, den)
    assert lo**den <= x**num <= hi**den
    assert hi - lo <= Fraction(2, 10**9) * max(Fraction(1), hi)


def test_sqrt_interval():
    lo, hi = sqrt_interval(Fraction(2))
    assert lo * lo <= 2 <= hi * hi
    assert hi - lo <= Fraction(1, 10**8)
    with pytest.raises(UsageError):
        sqrt_interval(Fraction(-1))


@given(st.fractions(min_value="1/1000", max_value=10**9, max_denominator=10**6))
@settings(max_examples=60, deadline=None)
def test_ln_interval_encloses_float_log(x):
    lo, hi = ln_interval(x)
    # float log as an independent sanity reference only
    ref = math.log(x)
    assert float(lo) - 1e-9 <= ref <= float(hi) + 1e-9
    assert hi - lo <= Fraction(1, 10**6) * max(abs(lo), abs(hi), Fraction(1))


def test_ln_interval_edges():
    assert ln_interval(Fraction(1)) == (0, 0)
    lo, hi = ln_interval(Fraction(1, 2))
    assert lo < 0 < -lo and hi < 0
    with pytest.raises(UsageError):
        ln_interval(Fraction(0))


def test_interval_arithmetic():
    a = (Fraction(1), Fraction(2))
    b = (Fraction(3), Fraction(4))
    assert interval_mul(a, b) == (3, 8)
    assert interval_div_pos(a, b) == (Fraction(1, 4), Fraction(2, 3))
    with pytest.raises(UsageError):
        interval_div_pos(a, (Fraction(-1), Fraction(1)))

"""Certified integer roots, rational power bounds, and log/sqrt enclosures.

The library never touches floats, but two places need irrational
quantities: fractional powers T^(a/b) in the threshold-selection bounds,
and log-normalized record statistics. Both are served here by rational
*enclosures* — pairs (lo, hi) with lo <= value <= hi — so that every
comparison made against them stays conservative and exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import UsageError

Interval = tuple[Fraction, Fraction]


def int_nth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, by Newton iteration on integers."""
    if k < 1:
        raise UsageError("root order must be >= 1")
    if n < 0:
        raise UsageError("negative radicand")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << (-(-n.bit_length() // k))  # 2^ceil(bits/k) >= n^(1/k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    return x


def rational_power_floor(
    x: Fraction, num: int, den: int, scale: int = 10**9
) -> tuple[Fraction, bool]:
    """Largest grid rational r with r**den <= x**num, i.e. a lower bound for x^(num/den).

    Returns (r, exact). When x**num is a perfect den-th power the exact
    root is returned with exact=True; otherwise r = floor(x^(num/den) * scale)/scale,
    which is certified: r**den <= x**num always holds.
    """
    x = Fraction(x)
    if x < 0:
        raise UsageError("negative base")
    if den < 1 or num < 0:
        raise UsageError("exponent must be a nonnegative rational with positive denominator")
    p = x.numerator**num
    q = x.denominator**num
    rp, rq = int_nth_root(p, den), int_nth_root(q, den)
    if rp**den == p and rq**den == q:
        return Fraction(rp, rq), True
    n = int_nth_root(p * scale**den // q, den)
    r = Fraction(n, scale)
    # floor division only ever shrinks the radicand, so the bound is safe
    assert r**den <= Fraction(p, q)
    return r, False


def rational_power_ceil(
    x: Fraction, num: int, den: int, scale: int = 10**9
) -> tuple[Fraction, bool]:
    """Smallest grid rational r with r**den >= x**num: an upper bound for x^(num/den)."""
    r, exact = rational_power_floor(x, num, den, scale)
    if exact:
        return r, True
    x = Fraction(x)
    p = x.numerator**num
    q = x.denominator**num
    c = -(-p * scale**den // q)  # ceil(p * scale^den / q)
    n = int_nth_root(c, den)
    if n**den < c:
        n += 1
    hi = Fraction(n, scale)
    assert hi**den >= Fraction(p, q)
    return hi, False


def sqrt_interval(x: Fraction, scale: int = 10**9) -> Interval:
    """(lo, hi) with lo <= sqrt(x) <= hi, endpoints on the 1/scale grid."""
    x = Fraction(x)
    if x < 0:
        raise UsageError("negative radicand")
    n = math.isqrt(x.numerator * x.denominator * scale**2)
    lo = Fraction(n, x.denominator * scale)
    hi = Fraction(n + 1, x.denominator * scale)
    assert lo * lo <= x <= hi * hi
    return lo, hi


def _atanh_series(z: Fraction, terms: int) -> tuple[Fraction, Fraction]:
    """(partial sum, tail bound) for 2*atanh(z) = ln((1+z)/(1-z)), 0 <= z < 1."""
    s = Fraction(0)
    zsq = z * z
    power = z
    for k in range(terms):
        s += power / (2 * k + 1)
        power *= zsq
    # tail: 2 * sum_{k>=terms} z^(2k+1)/(2k+1) <= 2 z^(2*terms+1) / ((2*terms+1)(1-z^2))
    tail = 2 * power / ((2 * terms + 1) * (1 - zsq))
    return 2 * s, tail


def ln_interval(x: Fraction, rel_width: Fraction = Fraction(1, 10**6)) -> Interval:
    """Certified enclosure of the natural log of a positive rational.

    Range-reduces by powers of two (ln x = e*ln 2 + ln f, f in [1,2)) and
    sums the atanh series with an explicit tail bound. The returned width
    is at most rel_width * max(|ln x|, 1).
    """
    x = Fraction(x)
    if x <= 0:
        raise UsageError("log of a nonpositive value")
    if x == 1:
        return Fraction(0), Fraction(0)
    e = x.numerator.bit_length() - x.denominator.bit_length()
    f = x / Fraction(2) ** e
    if f >= 2:
        f /= 2
        e += 1
    elif f < 1:
        f *= 2
        e -= 1
    # z for f in [1,2) satisfies z <= 1/3, so 12 terms give tails < 9^-12
    z_f = (f - 1) / (f + 1)
    z_2 = Fraction(1, 3)
    terms = 12
    while True:
        sf, tf = _atanh_series(z_f, terms)
        s2, t2 = _atanh_series(z_2, terms)
        if e >= 0:
            lo = e * s2 + sf
            hi = e * (s2 + t2) + sf + tf
        else:
            lo = e * (s2 + t2) + sf
            hi = e * s2 + sf + tf
        width = hi - lo
        if width <= rel_width * max(abs(lo), abs(hi), Fraction(1)):
            return lo, hi
        terms *= 2


def interval_mul(a: Interval, b: Interval) -> Interval:
    products = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    return min(products), max(products)


def interval_div_pos(a: Interval, b: Interval) -> Interval:
    """a / b for an interval b strictly above zero."""
    if b[0] <= 0:
        raise UsageError("interval division requires a positive divisor")
    lo = min(a[0] / b[0], a[0] / b[1])
    hi = max(a[1] / b[0], a[1] / b[1])
    return lo, hi


def interval_scale(a: Interval, c: Fraction) -> Interval:
    return (a[0] * c, a[1] * c) if c >= 0 else (a[1] * c, a[0] * c)

"""Scalar exact-arithmetic helpers: gcds, integer square roots of rationals.

Everything here is pure integer / :class:`fractions.Fraction` arithmetic.
Floating point is never consulted, not even as a first guess, so these
helpers are safe inside decision paths.
"""

from __future__ import annotations

import math
from fractions import Fraction


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def floorsqrt(q: Fraction | int) -> int:
    """Largest integer m >= 0 with m*m <= q.  Requires q >= 0."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("floorsqrt of a negative value")
    num, den = q.numerator, q.denominator
    m = math.isqrt(num // den)
    while (m + 1) * (m + 1) * den <= num:
        m += 1
    while m * m * den > num:
        m -= 1
    return m


def floor_add_sqrt(a: Fraction, q: Fraction) -> int:
    """floor(a + sqrt(q)) for rational a and rational q >= 0, exactly."""
    if q < 0:
        raise ValueError("square root of a negative value")

    def le(z: int) -> bool:
        # z <= a + sqrt(q)
        d = z - a
        return d <= 0 or d * d <= q

    z = math.floor(a) + floorsqrt(q)
    while le(z + 1):
        z += 1
    while not le(z):
        z -= 1
    return z


def ceil_sub_sqrt(a: Fraction, q: Fraction) -> int:
    """ceil(a - sqrt(q)) for rational a and rational q >= 0, exactly."""
    return -floor_add_sqrt(-a, q)

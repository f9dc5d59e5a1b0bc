"""Pell's equation x^2 - N*y^2 = 1 by continued fractions.

The opposite-class construction needs, for a root e and an interior class
d, the fundamental solution of x^2 - N*y^2 = 1 with N = 2*(d.d) + (e.d)^2.
The solver expands sqrt(N) with the standard (P, Q) integer recurrence and
reads the solution off the convergent at the end of the first period (the
second period when the period length is odd).  Everything is exact; the
minimality of the returned solution is certified separately in the tests
by brute force over y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputTooSmall, SquareInput


def integer_sqrt(n: int) -> tuple[int, bool]:
    """(floor(sqrt(n)), n is a perfect square).  Requires n >= 0."""
    if n < 0:
        raise ValueError("integer_sqrt of a negative number")
    r = math.isqrt(n)
    return r, r * r == n


@dataclass(frozen=True)
class CFExpansion:
    """Continued fraction of sqrt(n): [a0; period repeating]."""

    n: int
    a0: int
    period: tuple[int, ...]

    def __post_init__(self):
        assert self.period and self.period[-1] == 2 * self.a0


@dataclass(frozen=True)
class PellSolution:
    """Fundamental solution of x^2 - n*y^2 = 1."""

    n: int
    x: int
    y: int

    def __post_init__(self):
        assert self.x * self.x - self.n * self.y * self.y == 1


def cf_sqrt(n: int) -> CFExpansion:
    """Full periodic continued-fraction expansion of sqrt(n), n non-square."""
    if n < 1:
        raise InputTooSmall(f"cf_sqrt needs a positive integer, got {n}")
    a0, exact = integer_sqrt(n)
    if exact:
        raise SquareInput(f"{n} is a perfect square")
    period = []
    m, d, a = 0, 1, a0
    while a != 2 * a0:
        m = d * a - m
        d = (n - m * m) // d
        a = (a0 + m) // d
        period.append(a)
    return CFExpansion(n=n, a0=a0, period=tuple(period))


def fundamental_solution(n: int) -> PellSolution:
    """Minimal (x, y) with x, y > 0 and x^2 - n*y^2 = 1.

    Uses the convergents of sqrt(n); with period length r the solution is
    the (r-1)-th convergent for even r and the (2r-1)-th for odd r.
    """
    if n < 2:
        raise InputTooSmall(f"Pell's equation needs n >= 2, got {n}")
    cf = cf_sqrt(n)
    r = len(cf.period)
    terms = [cf.a0] + list(cf.period) * (1 if r % 2 == 0 else 2)
    p_prev, p = 1, terms[0]
    q_prev, q = 0, 1
    for a in terms[1 : (r if r % 2 == 0 else 2 * r)]:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
    if p * p - n * q * q != 1:
        raise AssertionError(f"convergent ({p}, {q}) does not solve Pell for {n}")
    return PellSolution(n=n, x=p, y=q)

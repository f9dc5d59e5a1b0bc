"""Exact linear algebra over the integers and rationals.

The routines here back every lattice computation in the package:

* integer characteristic polynomials (Faddeev-LeVerrier), from which the
  signature of a symmetric integer matrix is read off exactly by Descartes'
  rule of signs (valid because all eigenvalues are real);
* LDL^T decomposition of positive-definite rational matrices;
* a unimodular reduction of an integer linear functional, giving a basis
  of its kernel sublattice together with a particular solution;
* `slice_points`, the core enumerator: all integer vectors with a fixed
  value of a linear functional and a bounded-below quadratic value.  On a
  hyperbolic lattice sliced by a positive-square degree functional the
  solution set is an ellipsoid, and the enumeration is a Fincke-Pohst
  style recursion with exact rational interval bounds per coordinate.

No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence

from .intmath import ceil_sub_sqrt, floor_add_sqrt, xgcd

Matrix = Sequence[Sequence[int]]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> list:
    return [dot(row, v) for row in m]


def pair_value(gram: Matrix, u: Sequence[int], v: Sequence[int]) -> int:
    """u^T * gram * v in exact integer arithmetic."""
    return dot(u, mat_vec(gram, v))


def quad_value(gram: Matrix, v: Sequence[int]) -> int:
    return pair_value(gram, v, v)


def char_poly(m: Matrix) -> list[int]:
    """Coefficients [1, c1, ..., cn] of det(xI - m), exact integers."""
    n = len(m)
    coeffs = [1]
    work = [list(row) for row in m]  # M_1 = m
    for k in range(1, n + 1):
        tr = sum(work[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("Faddeev-LeVerrier trace not divisible")
        c = -(tr // k)
        coeffs.append(c)
        if k == n:
            break
        # M_{k+1} = m * (M_k + c * I)
        for i in range(n):
            work[i][i] += c
        work = [[dot(m[i], [work[r][j] for r in range(n)]) for j in range(n)]
                for i in range(n)]
    return coeffs


def determinant(m: Matrix) -> int:
    n = len(m)
    cn = char_poly(m)[-1]
    # det(xI - m) has constant term (-1)^n det(m)
    return cn if n % 2 == 0 else -cn


def _sign_variations(coeffs: Sequence[int]) -> int:
    signs = [1 if c > 0 else -1 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(m: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a symmetric integer
    matrix, computed exactly.

    Descartes' rule of signs counts the positive roots of a polynomial with
    all roots real on the nose, which is the case for char polys of
    symmetric matrices.
    """
    n = len(m)
    coeffs = char_poly(m)
    zero = 0
    while zero < n and coeffs[n - zero] == 0:
        zero += 1
    pos = _sign_variations(coeffs)
    # p(-x): coefficient of x^(n-i) picks up (-1)^(n-i)
    neg_coeffs = [c if (n - i) % 2 == 0 else -c for i, c in enumerate(coeffs)]
    neg = _sign_variations(neg_coeffs)
    assert pos + neg + zero == n
    return pos, neg, zero


def solve_linear(m: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve m x = rhs by Gaussian elimination; m must be invertible."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def invert(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    cols = []
    for j in range(n):
        rhs = [Fraction(1 if i == j else 0) for i in range(n)]
        cols.append(solve_linear(m, rhs))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def matrix_rank(vectors: Sequence[Sequence[int]]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    col = 0
    width = len(rows[0]) if rows else 0
    while rank < len(rows) and col < width:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def ldl(t: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """t = L D L^T for symmetric positive-definite rational t.

    Raises ArithmeticError when t is not positive definite; callers rely on
    this as a hard check that a restricted form is definite.
    """
    n = len(t)
    a = [[Fraction(x) for x in row] for row in t]
    lower = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    diag = [Fraction(0)] * n
    for k in range(n):
        if a[k][k] <= 0:
            raise ArithmeticError("matrix is not positive definite")
        diag[k] = a[k][k]
        for i in range(k + 1, n):
            lower[i][k] = a[i][k] / diag[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] -= lower[i][k] * diag[k] * lower[j][k]
    return lower, diag


def unimodular_kernel(w: Sequence[int]) -> tuple[int, list[int], list[list[int]]]:
    """Reduce the functional v -> w.v over the integers.

    Returns (g, u0, kernel) where g = gcd(w) > 0, w.u0 = g, and kernel is a
    basis of the sublattice {v : w.v = 0}.  Together u0 and the kernel
    vectors form a Z-basis of Z^rank.
    """
    rank = len(w)
    u_acc = [0] * rank
    u_acc[0] = 1
    g = w[0]
    kernel: list[list[int]] = []
    for i in range(1, rank):
        e_i = [0] * rank
        e_i[i] = 1
        gi, s, t = xgcd(g, w[i])
        if gi == 0:
            kernel.append(e_i)
            continue
        kernel.append([(-w[i] // gi) * ua + (g // gi) * ei
                       for ua, ei in zip(u_acc, e_i)])
        u_acc = [s * ua + t * ei for ua, ei in zip(u_acc, e_i)]
        g = gi
    if g < 0:
        g = -g
        u_acc = [-c for c in u_acc]
    if g == 0:
        raise ValueError("zero functional has no slice structure")
    return g, u_acc, kernel


def slice_points(
    gram: Matrix,
    w: Sequence[int],
    value: int,
    square_min: int,
    square_max: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """All integer v with w.v == value and square_min <= v^T gram v
    (<= square_max when given).

    Requires the form restricted to {w.v = 0} to be negative definite, which
    holds whenever w = gram*h for a positive-square h on a hyperbolic
    lattice.  Enumeration order is deterministic.
    """
    g, u0, kernel = unimodular_kernel(w)
    if value % g:
        return
    scale = value // g
    v0 = [scale * c for c in u0]
    n = len(kernel)
    if n == 0:
        sq = quad_value(gram, v0)
        if sq >= square_min and (square_max is None or sq <= square_max):
            yield tuple(v0)
        return

    gv0 = mat_vec(gram, v0)
    gk = [mat_vec(gram, col) for col in kernel]
    s_mat = [[dot(kernel[i], gk[j]) for j in range(n)] for i in range(n)]
    b = [dot(kernel[j], gv0) for j in range(n)]
    c0 = dot(v0, gv0)

    t_mat = [[Fraction(-s_mat[i][j]) for j in range(n)] for i in range(n)]
    center = solve_linear(t_mat, [Fraction(x) for x in b])
    radius = Fraction(c0 - square_min) + dot(b, center)
    if radius < 0:
        return
    lower, diag = ldl(t_mat)

    x = [Fraction(0)] * n  # x = t - center
    t_vec = [0] * n

    def recurse(level: int, budget: Fraction) -> Iterator[tuple[int, ...]]:
        if level < 0:
            v = tuple(v0[i] + sum(kernel[j][i] * t_vec[j] for j in range(n))
                      for i in range(len(v0)))
            sq = quad_value(gram, v)
            if sq >= square_min and (square_max is None or sq <= square_max):
                assert dot(w, v) == value
                yield v
            return
        shift = sum(lower[j][level] * x[j] for j in range(level + 1, n))
        half_width = budget / diag[level]
        mid = center[level] - shift
        lo = ceil_sub_sqrt(mid, half_width)
        hi = floor_add_sqrt(mid, half_width)
        for ti in range(lo, hi + 1):
            t_vec[level] = ti
            x[level] = ti - center[level]
            y = x[level] + shift
            yield from recurse(level - 1, budget - diag[level] * y * y)

    yield from recurse(n - 1, radius)

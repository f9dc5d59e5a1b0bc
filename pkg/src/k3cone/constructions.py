"""Constructive certificates inside rank-2 subcones, and the accumulating
sequence of roots.

Two engines live here.  `opposite_class` takes an effective class e of
square 0 or -2 and an interior class d and produces f = alpha*d - beta*e,
effective of square 0 or -2, lying on the side of d opposite to e; in the
root case this runs through the fundamental solution of Pell's equation
x^2 - N*y^2 = 1 with N = 2*(d.d) + (e.d)^2.  `dn_sequence` takes an
isotropic e, an interior d and a root l with d.l = 0 and emits the
quadratic-coefficient family of roots

    +-d_n = (2*(2B^2 - A*C^2)*C*n^2 - 4*B*n) e + (2*C^2*n) d + (1 - 2*B*C*n) l

(A = d.d, B = e.d, C = e.l) whose square is identically -2 and whose rays
accumulate on the ray of e, provided the guard 2B^2 != A*C^2 holds.  The
guard can genuinely fail on abstract lattice data; that case is surfaced
as DegenerateConfiguration, never repaired.

Every claimed inequality and every d_n square is asserted per instance; a
violation raises InternalGuard because it would mean transcription error,
not bad input.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import BadInput, DegenerateConfiguration, InternalGuard
from .lattice import Coords, GramLattice, Polarization, _as_coords
from .pell import fundamental_solution, integer_sqrt
from .quadratic import matrix_rank


class OppositeCase(Enum):
    ISOTROPIC_E = "isotropic-e"
    ROOT_E_SQUARE_N = "root-e-square-n"
    ROOT_E_PELL = "root-e-pell"


@dataclass(frozen=True)
class SubconeWitness:
    """f = alpha*d - beta*e with f.f in {0, -2}, e.f > 0, alpha, beta > 0.

    alpha, beta > 0 certify that e and f lie on opposite sides of d: d is
    in the positive rational span of e and f.  All intermediates are kept
    for auditability; pell_x/pell_y are set only in the Pell case.
    """

    f: Coords
    alpha: int
    beta: int
    case_tag: OppositeCase
    e: Coords
    d: Coords
    a: int
    b: int
    c: int
    n: int | None = None
    pell_x: int | None = None
    pell_y: int | None = None


def _combine(alpha: int, d: Coords, beta: int, e: Coords) -> Coords:
    return tuple(alpha * dv - beta * ev for dv, ev in zip(d, e))


def opposite_class(pol: Polarization, e, d) -> SubconeWitness:
    """Produce the effective class opposite to e across d in span(e, d).

    Case e.e = 0: B = e.d is positive (forced by the signature for classes
    of positive degree), and alpha = 2B, beta = A gives f.f = 0.

    Case e.e = -2 with N = 2A + B^2: when N = m^2 take alpha = 2,
    beta = m - B (f.f = 0); otherwise the fundamental Pell solution (x, y)
    of x^2 - N*y^2 = 1 gives alpha = 2y, beta = x - B*y and f.f = -2.
    """
    lattice = pol.lattice
    ce, cd = _as_coords(e), _as_coords(d)
    lattice._check_length(ce)
    lattice._check_length(cd)

    c = lattice.square(ce)
    if c not in (0, -2):
        raise BadInput(f"e.e = {c} must be 0 or -2")
    if pol.degree(ce) <= 0:
        raise BadInput("e must have positive degree")
    a = lattice.square(cd)
    if a <= 0:
        raise BadInput(f"d.d = {a} must be positive")
    if pol.degree(cd) <= 0:
        raise BadInput("d must have positive degree")
    if matrix_rank([ce, cd]) != 2:
        raise BadInput("e and d must be linearly independent")

    b = lattice.pairing(ce, cd)
    n = x = y = None
    if c == 0:
        if b <= 0:
            raise InternalGuard(f"e.d = {b} must be positive for isotropic e")
        alpha, beta = 2 * b, a
        case = OppositeCase.ISOTROPIC_E
        expected_square = 0
    else:
        n = 2 * a + b * b
        root, exact = integer_sqrt(n)
        if exact:
            alpha, beta = 2, root - b
            case = OppositeCase.ROOT_E_SQUARE_N
            expected_square = 0
        else:
            sol = fundamental_solution(n)
            x, y = sol.x, sol.y
            alpha, beta = 2 * y, x - b * y
            case = OppositeCase.ROOT_E_PELL
            expected_square = -2

    f = _combine(alpha, cd, beta, ce)
    if alpha <= 0 or beta <= 0:
        raise InternalGuard(f"alpha = {alpha}, beta = {beta} must be positive")
    if lattice.square(f) != expected_square:
        raise InternalGuard(
            f"f.f = {lattice.square(f)}, expected {expected_square}")
    if lattice.pairing(ce, f) <= 0:
        raise InternalGuard(f"e.f = {lattice.pairing(ce, f)} must be positive")
    if pol.degree(f) <= 0:
        raise InternalGuard(f"f.h = {pol.degree(f)} must be positive")
    return SubconeWitness(f=f, alpha=alpha, beta=beta, case_tag=case,
                          e=ce, d=cd, a=a, b=b, c=c,
                          n=n, pell_x=x, pell_y=y)


@dataclass(frozen=True)
class GuardResult:
    """Exact value of 2B^2 - A*C^2 for the triple (e, d, l)."""

    value: int
    passed: bool
    a: int
    b: int
    c: int


def check_nondegenerate(lattice: GramLattice, e, d, l) -> GuardResult:
    """Evaluate the nondegeneracy guard 2B^2 - A*C^2 for (e, d, l).

    Preconditions: e.e = 0, l.l = -2, d.l = 0, d.d > 0.  Linear dependence
    of the triple is not rejected separately: under the preconditions a
    dependent triple always evaluates to guard value 0, so it surfaces as a
    failed guard.  On geometric input the guard cannot vanish; on abstract
    lattices a zero is a legal outcome and blocks the sequence.
    """
    ce, cd, cl = _as_coords(e), _as_coords(d), _as_coords(l)
    for v in (ce, cd, cl):
        lattice._check_length(v)
    if lattice.square(ce) != 0:
        raise BadInput(f"e.e = {lattice.square(ce)} must be 0")
    if lattice.square(cl) != -2:
        raise BadInput(f"l.l = {lattice.square(cl)} must be -2")
    if lattice.pairing(cd, cl) != 0:
        raise BadInput(f"d.l = {lattice.pairing(cd, cl)} must be 0")
    if lattice.square(cd) <= 0:
        raise BadInput(f"d.d = {lattice.square(cd)} must be positive")
    a = lattice.square(cd)
    b = lattice.pairing(ce, cd)
    c = lattice.pairing(ce, cl)
    value = 2 * b * b - a * c * c
    return GuardResult(value=value, passed=value != 0, a=a, b=b, c=c)


@dataclass(frozen=True)
class DnTerm:
    n: int
    vector: Coords
    sign: int
    degree: int
    ray_gap_sq: Fraction


@dataclass(frozen=True)
class DnSequence:
    e: Coords
    d: Coords
    l: Coords
    a: int
    b: int
    c: int
    guard: int
    terms: tuple[DnTerm, ...]
    monotone_from: int

    def __iter__(self):
        return iter(self.terms)


def dn_sequence(
    pol: Polarization,
    e,
    d,
    l,
    n_from: int = 3,
    n_to: int = 12,
    allow_small_n: bool = False,
) -> DnSequence:
    """Emit the accumulating family of roots for n in [n_from, n_to].

    Each term is sign-adjusted to positive degree and checked to have
    square exactly -2.  `ray_gap_sq` is the squared coordinate distance
    between the degree-1 representatives of d_n and of e; `monotone_from`
    is the first n from which the computed gaps strictly decrease.
    n_from < 3 requires allow_small_n (terms are still assertion-checked).
    """
    guard = check_nondegenerate(pol.lattice, e, d, l)
    if not guard.passed:
        raise DegenerateConfiguration(
            f"2B^2 - A*C^2 = 0 for A={guard.a}, B={guard.b}, C={guard.c}")
    if n_from < 3 and not allow_small_n:
        raise BadInput("n_from < 3 requires allow_small_n=True")
    if n_to < n_from:
        raise BadInput("n_to must be >= n_from")

    lattice = pol.lattice
    ce, cd, cl = _as_coords(e), _as_coords(d), _as_coords(l)
    a, b, c, g = guard.a, guard.b, guard.c, guard.value

    e_degree = pol.degree(ce)
    assert e_degree != 0, "isotropic class cannot be orthogonal to a polarization"
    e_ray = tuple(Fraction(x, e_degree) for x in ce)

    terms = []
    for n in range(n_from, n_to + 1):
        pe = 2 * g * c * n * n - 4 * b * n
        pd = 2 * c * c * n
        pl = 1 - 2 * b * c * n
        vec = tuple(pe * xe + pd * xd + pl * xl
                    for xe, xd, xl in zip(ce, cd, cl))
        if lattice.square(vec) != -2:
            raise InternalGuard(
                f"d_{n} has square {lattice.square(vec)}, expected -2")
        degree = pol.degree(vec)
        if degree == 0:
            raise InternalGuard(f"d_{n} is orthogonal to the polarization")
        sign = 1 if degree > 0 else -1
        vec = tuple(sign * x for x in vec)
        degree = sign * degree
        ray = tuple(Fraction(x, degree) for x in vec)
        gap_sq = sum((r - s) ** 2 for r, s in zip(ray, e_ray))
        terms.append(DnTerm(n=n, vector=vec, sign=sign, degree=degree,
                            ray_gap_sq=gap_sq))

    monotone_from = terms[0].n
    for prev, cur in zip(terms, terms[1:]):
        if cur.ray_gap_sq >= prev.ray_gap_sq:
            monotone_from = cur.n
    return DnSequence(e=ce, d=cd, l=cl, a=a, b=b, c=c, guard=g,
                      terms=tuple(terms), monotone_from=monotone_from)

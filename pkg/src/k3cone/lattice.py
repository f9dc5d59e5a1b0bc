"""The numerical lattice of 1-cycle classes and its intersection pairing.

A K3 surface's curve classes modulo numerical equivalence form a free
abelian group of rank rho carrying an even symmetric bilinear form of
signature (1, rho-1).  This module models that structure on explicit
integer Gram matrices, validates candidate ample classes (positive square,
orthogonal to no (-2)-class), and implements the Riemann-Roch effectivity
test: an integral class a with a.a >= -2 has either a or -a effective, the
sign being decided by the degree a.h against a validated polarization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

from . import quadratic
from .errors import (
    DimensionMismatch,
    InternalGuard,
    NonPositiveSquare,
    UnvalidatedInput,
    WallClass,
    ZeroClass,
)

Coords = tuple[int, ...]


def _as_coords(v: "ClassVector | Sequence[int]") -> Coords:
    if isinstance(v, ClassVector):
        return v.coords
    return tuple(int(c) for c in v)


@dataclass(frozen=True)
class ClassVector:
    """An integral 1-cycle class given by coordinates in the lattice basis.

    ``primitive=True`` asserts that the gcd of the coordinates is 1.
    """

    coords: Coords
    primitive: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if self.primitive and math.gcd(*self.coords) != 1:
            raise ValueError(f"{self.coords} is not primitive")

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the structural checks on a Gram matrix."""

    symmetric: bool
    even_diagonal: bool
    nondegenerate: bool
    signature: tuple[int, int, int] | None
    passed: bool
    failures: tuple[str, ...]


@dataclass(frozen=True)
class GramLattice:
    """An integer Gram matrix, intended to be even of signature (1, rho-1)."""

    gram: tuple[Coords, ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.gram)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise ValueError("gram matrix must be square and nonempty")
        object.__setattr__(self, "gram", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "GramLattice":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def hyperbolic_plane(cls) -> "GramLattice":
        return cls(((0, 1), (1, 0)))

    @classmethod
    def diagonal(cls, *entries: int) -> "GramLattice":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n))
                         for i in range(n)))

    def direct_sum(self, other: "GramLattice") -> "GramLattice":
        n, m = self.rank, other.rank
        rows = []
        for i in range(n):
            rows.append(tuple(self.gram[i]) + (0,) * m)
        for i in range(m):
            rows.append((0,) * n + tuple(other.gram[i]))
        return GramLattice(tuple(rows))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def _check_length(self, v: Coords):
        if len(v) != self.rank:
            raise DimensionMismatch(
                f"vector of length {len(v)} on a rank-{self.rank} lattice")

    def pairing(self, u, v) -> int:
        """Intersection number u.v, exact."""
        cu, cv = _as_coords(u), _as_coords(v)
        self._check_length(cu)
        self._check_length(cv)
        return quadratic.pair_value(self.gram, cu, cv)

    def square(self, v) -> int:
        cv = _as_coords(v)
        self._check_length(cv)
        return quadratic.quad_value(self.gram, cv)

    @cached_property
    def determinant(self) -> int:
        return quadratic.determinant(self.gram)

    @cached_property
    def validation(self) -> ValidationReport:
        return validate_lattice(self)

    @property
    def is_valid(self) -> bool:
        return self.validation.passed


def pairing(lattice: GramLattice, u, v) -> int:
    return lattice.pairing(u, v)


def validate_lattice(lattice: GramLattice) -> ValidationReport:
    """Check symmetry, even diagonal, nondegeneracy and signature (1, rho-1).

    Failures are reported, not raised; the report's failure names are part
    of the CLI contract.
    """
    gram = lattice.gram
    rank = lattice.rank
    failures = []

    symmetric = all(gram[i][j] == gram[j][i]
                    for i in range(rank) for j in range(i + 1, rank))
    if not symmetric:
        failures.append("SymmetryViolation")

    even_diagonal = all(gram[i][i] % 2 == 0 for i in range(rank))
    if not even_diagonal:
        failures.append("EvenessViolation")

    sig = None
    nondegenerate = False
    if symmetric:
        sig = quadratic.signature(gram)
        nondegenerate = sig[2] == 0
        if not nondegenerate:
            failures.append("DegeneracyViolation")
        elif sig[0] != 1:
            failures.append("SignatureViolation")
    else:
        nondegenerate = quadratic.determinant(gram) != 0
        if not nondegenerate:
            failures.append("DegeneracyViolation")

    return ValidationReport(
        symmetric=symmetric,
        even_diagonal=even_diagonal,
        nondegenerate=nondegenerate,
        signature=sig,
        passed=not failures,
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class Polarization:
    """A validated ample class: positive square, no orthogonal (-2)-class.

    Construct through :func:`validate_polarization`; every cone operation
    takes a Polarization rather than a raw vector because a wall (a root
    orthogonal to h) breaks the effectivity case analysis.
    """

    lattice: GramLattice
    h: Coords

    @property
    def square(self) -> int:
        return self.lattice.square(self.h)

    def degree(self, v) -> int:
        """v.h, the degree of a class against this polarization."""
        return self.lattice.pairing(self.h, v)

    @cached_property
    def degree_functional(self) -> Coords:
        """w = gram*h, so that v.h = w.v for plain integer vectors."""
        return tuple(quadratic.mat_vec(self.lattice.gram, self.h))


def _canonical_sign(v: Coords) -> Coords:
    for c in v:
        if c != 0:
            return v if c > 0 else tuple(-x for x in v)
    return v


def validate_polarization(lattice: GramLattice, h) -> Polarization:
    """Validate h as a polarization, or raise with a reason.

    Raises NonPositiveSquare when h.h <= 0 and WallClass (carrying a
    witness) when some v with v.v = -2 is orthogonal to h.  The wall search
    is exhaustive: the orthogonal complement of h is negative definite, so
    the (-2)-vectors in it form a finite, fully enumerable set.
    """
    if not lattice.is_valid:
        raise UnvalidatedInput(
            f"lattice failed validation: {lattice.validation.failures}")
    ch = _as_coords(h)
    lattice._check_length(ch)
    if lattice.square(ch) <= 0:
        raise NonPositiveSquare(f"h.h = {lattice.square(ch)} must be positive")
    w = quadratic.mat_vec(lattice.gram, ch)
    walls = sorted(_canonical_sign(v)
                   for v in quadratic.slice_points(lattice.gram, w, 0, -2, -2))
    if walls:
        raise WallClass(walls[0])
    return Polarization(lattice=lattice, h=ch)


class Effectivity(Enum):
    EFFECTIVE = "effective"
    EFFECTIVE_NEGATED = "effective-negated"
    PARITY_ONLY = "parity-only"


@dataclass(frozen=True)
class EffectivityClass:
    """Result of the Riemann-Roch effectivity test on an integral class."""

    kind: Effectivity
    representative: Coords | None
    square: int
    degree: int


def classify_integral(pol: Polarization, a) -> EffectivityClass:
    """Decide effectivity of a at the level Riemann-Roch allows.

    For a.a >= -2 exactly one of a, -a is effective and the degree picks it
    out; for a.a < -2 only the parity statement applies and the result is
    PARITY_ONLY.  A class of square >= -2 orthogonal to a validated h would
    contradict either wall-freeness or the signature, so hitting degree 0
    there raises InternalGuard.
    """
    ca = _as_coords(a)
    lattice = pol.lattice
    lattice._check_length(ca)
    if not any(ca):
        raise ZeroClass("the zero class has no effectivity type")
    square = lattice.square(ca)
    degree = pol.degree(ca)
    if square < -2:
        return EffectivityClass(Effectivity.PARITY_ONLY, None, square, degree)
    if degree > 0:
        return EffectivityClass(Effectivity.EFFECTIVE, ca, square, degree)
    if degree < 0:
        return EffectivityClass(
            Effectivity.EFFECTIVE_NEGATED,
            tuple(-c for c in ca), square, degree)
    raise InternalGuard(
        f"class {ca} of square {square} is orthogonal to a validated polarization")

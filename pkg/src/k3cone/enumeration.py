"""Bounded enumeration of integral classes with prescribed square and degree.

For a validated polarization h the classes of a fixed degree d form an
affine sublattice on which the quadratic form is an inverted paraboloid:
its restriction to the orthogonal complement of h is negative definite.
A lower bound on the square therefore cuts out an ellipsoid, and each
degree slice can be enumerated completely and exactly.  These slices are
the computational substrate for root searches, nodal-candidate filtering
and every finiteness check in the cone analysis.

Results always carry `complete_up_to`, the degree bound they were computed
with; nothing here ever pretends a bounded search is a total one.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from . import quadratic
from .errors import BadInput, BoxTooSmall, UnvalidatedInput
from .intmath import floorsqrt
from .lattice import Coords, GramLattice, Polarization


@dataclass(frozen=True)
class EnumerationQuery:
    """Classes v with v.v == target_square and 0 < v.h <= max_degree."""

    target_square: int
    max_degree: int
    primitive_only: bool = False

    def __post_init__(self):
        if self.target_square % 2 != 0:
            raise BadInput("target square must be even on an even lattice")
        if self.max_degree < 1:
            raise BadInput("max_degree must be >= 1")


@dataclass(frozen=True)
class AnnotatedClass:
    coords: Coords
    degree: int
    square: int


@dataclass(frozen=True)
class ClassList:
    """Sorted, duplicate-free enumeration result with its degree bound."""

    classes: tuple[AnnotatedClass, ...]
    complete_up_to: int

    def coordinate_set(self) -> frozenset[Coords]:
        return frozenset(c.coords for c in self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)


def _require_polarization(pol: Polarization):
    if not isinstance(pol, Polarization):
        raise UnvalidatedInput("operations require a validated Polarization")


def _sorted_classes(pol: Polarization, vectors) -> tuple[AnnotatedClass, ...]:
    lattice = pol.lattice
    annotated = [
        AnnotatedClass(coords=v, degree=pol.degree(v), square=lattice.square(v))
        for v in set(vectors)
    ]
    annotated.sort(key=lambda c: (c.degree, c.coords))
    return tuple(annotated)


def degree_slice(
    pol: Polarization,
    degree: int,
    square_min: int,
    square_max: int | None = None,
) -> tuple[Coords, ...]:
    """All classes of the given degree with square in [square_min, square_max].

    This is the raw per-slice enumerator; slices are independent and may be
    evaluated in parallel by callers.
    """
    _require_polarization(pol)
    found = list(quadratic.slice_points(
        pol.lattice.gram, pol.degree_functional, degree, square_min, square_max))
    found.sort()
    return tuple(found)


def classes_with_square(
    pol: Polarization,
    query: EnumerationQuery,
    workers: int = 1,
) -> ClassList:
    """Exactly the set {v : v.v = target_square, 0 < v.h <= max_degree}.

    Slice enumeration is complete per degree, so the union over degrees
    1..max_degree is the full answer.  `workers > 1` evaluates slices in a
    thread pool; the merged output is re-sorted into canonical order, so
    the result is identical for any worker count.
    """
    _require_polarization(pol)
    degrees = range(1, query.max_degree + 1)
    s = query.target_square

    def run(d: int) -> tuple[Coords, ...]:
        return degree_slice(pol, d, s, s)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            slices = list(pool.map(run, degrees))
    else:
        slices = [run(d) for d in degrees]

    vectors = [v for sl in slices for v in sl]
    if query.primitive_only:
        vectors = [v for v in vectors if gcd(*v) == 1]
    return ClassList(
        classes=_sorted_classes(pol, vectors),
        complete_up_to=query.max_degree,
    )


@dataclass(frozen=True)
class BoxOracleResult:
    classes: ClassList
    sufficient_box: int


def sufficient_box(pol: Polarization, query: EnumerationQuery) -> int:
    """Smallest coordinate box guaranteed to contain every query solution.

    Every solution v satisfies v^T M v = 2*(v.h)^2/(h.h) - v.v with
    M = (2/(h.h)) * w w^T - gram positive definite (w = gram*h), bounded by
    r = 2*max_degree^2/(h.h) - target_square.  Coordinate i of the ellipsoid
    {x : x^T M x <= r} extends to sqrt(r * (M^-1)_ii).
    """
    _require_polarization(pol)
    gram = pol.lattice.gram
    w = pol.degree_functional
    hh = Fraction(pol.square)
    rank = pol.lattice.rank
    m = [[Fraction(2 * w[i] * w[j], 1) / hh - gram[i][j] for j in range(rank)]
         for i in range(rank)]
    inv = quadratic.invert(m)
    r = Fraction(2 * query.max_degree ** 2) / hh - query.target_square
    if r < 0:
        return 0
    return max(floorsqrt(r * inv[i][i]) for i in range(rank))


def brute_force_box_oracle(
    pol: Polarization,
    query: EnumerationQuery,
    box: int,
) -> BoxOracleResult:
    """Naive scan of the cube [-box, box]^rank; the completeness oracle.

    Raises BoxTooSmall when the box does not provably cover every degree
    slice's ellipsoid, so a passing run certifies that the scan saw the
    whole solution set.
    """
    _require_polarization(pol)
    needed = max(1, sufficient_box(pol, query))
    if box < needed:
        raise BoxTooSmall(given=box, required=needed)
    lattice = pol.lattice
    w = pol.degree_functional
    rank = lattice.rank
    s = query.target_square
    hits = []
    for v in product(range(-box, box + 1), repeat=rank):
        deg = quadratic.dot(w, v)
        if 0 < deg <= query.max_degree and lattice.square(v) == s:
            if query.primitive_only and gcd(*v) != 1:
                continue
            hits.append(v)
    return BoxOracleResult(
        classes=ClassList(classes=_sorted_classes(pol, hits),
                          complete_up_to=query.max_degree),
        sufficient_box=needed,
    )


@dataclass(frozen=True)
class RootSearchResult:
    """Outcome of a bounded search for (-2)-classes of positive degree."""

    found: bool
    witness: Coords | None
    searched_up_to: int


def has_root_up_to(pol: Polarization, max_degree: int) -> RootSearchResult:
    """First root with 0 < degree <= max_degree, or the explicit statement
    that none exists up to that bound (which is NOT a nonexistence proof)."""
    if max_degree < 1:
        raise BadInput("max_degree must be >= 1")
    for d in range(1, max_degree + 1):
        sl = degree_slice(pol, d, -2, -2)
        if sl:
            return RootSearchResult(found=True, witness=sl[0],
                                    searched_up_to=max_degree)
    return RootSearchResult(found=False, witness=None,
                            searched_up_to=max_degree)

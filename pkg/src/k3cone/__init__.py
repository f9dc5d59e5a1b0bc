"""Exact-arithmetic model of the cone of curves of a K3 surface.

The package works with a hyperbolic even lattice given by an integer Gram
matrix and a validated polarization, and computes bounded, exact shadows
of the cone structure: effectivity of integral classes, enumeration of
roots and isotropic classes, nodal candidates, the opposite-class and
accumulating-sequence constructions, and the round-cone versus
nodal-closure dichotomy.  All arithmetic is arbitrary-precision integer or
rational; no floating point enters any decision path.
"""

from .cone import (
    CongruenceCertificate,
    ConeSection,
    DichotomyVerdict,
    NodalSet,
    QMembership,
    Verdict,
    classify_dichotomy,
    cone_section,
    count_outside_qeps,
    interval_hausdorff_sq,
    nodal_candidates,
    q_membership,
    qeps_stability_bound,
    verify_certificate,
)
from .constructions import (
    DnSequence,
    DnTerm,
    GuardResult,
    OppositeCase,
    SubconeWitness,
    check_nondegenerate,
    dn_sequence,
    opposite_class,
)
from .document import LatticeDocument, load_document, parse_document
from .enumeration import (
    BoxOracleResult,
    ClassList,
    EnumerationQuery,
    RootSearchResult,
    brute_force_box_oracle,
    classes_with_square,
    degree_slice,
    has_root_up_to,
    sufficient_box,
)
from .errors import (
    BadInput,
    BoxTooSmall,
    CertificateInvalid,
    DegenerateConfiguration,
    DegeneratePlane,
    DimensionMismatch,
    InputTooSmall,
    InternalGuard,
    K3ConeError,
    NonPositiveEpsilon,
    NonPositiveSquare,
    RankTooSmall,
    SquareInput,
    UnvalidatedInput,
    WallClass,
    ZeroClass,
)
from .lattice import (
    ClassVector,
    Effectivity,
    EffectivityClass,
    GramLattice,
    Polarization,
    ValidationReport,
    classify_integral,
    pairing,
    validate_lattice,
    validate_polarization,
)
from .pell import CFExpansion, PellSolution, cf_sqrt, fundamental_solution, integer_sqrt

__all__ = [name for name in dir() if not name.startswith("_")]

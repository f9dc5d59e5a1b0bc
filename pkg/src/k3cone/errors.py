"""Exception hierarchy shared by every module.

The exception class name is the error name printed by the CLI, so the
names here are part of the output contract and must stay stable.
"""

from __future__ import annotations


class K3ConeError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionMismatch(K3ConeError):
    """Vector length does not match the lattice rank."""


class ZeroClass(K3ConeError):
    """An operation that needs a nonzero class received the zero vector."""


class NonPositiveSquare(K3ConeError):
    """Candidate polarization has self-intersection <= 0."""


class WallClass(K3ConeError):
    """Candidate polarization is orthogonal to a (-2)-class."""

    def __init__(self, witness: tuple[int, ...]):
        self.witness = witness
        super().__init__(f"orthogonal (-2)-class {witness}")


class UnvalidatedInput(K3ConeError):
    """Operation requires a validated lattice or polarization."""


class SquareInput(K3ConeError):
    """Continued-fraction / Pell routines need a non-square argument."""


class InputTooSmall(K3ConeError):
    """Pell solver needs n >= 2."""


class BoxTooSmall(K3ConeError):
    """Brute-force box does not cover the solution ellipsoids."""

    def __init__(self, given: int, required: int):
        self.given = given
        self.required = required
        super().__init__(f"box {given} is below the sufficient box {required}")


class RankTooSmall(K3ConeError):
    """Dichotomy classification needs rank >= 2."""


class NonPositiveEpsilon(K3ConeError):
    """Epsilon must be a positive rational."""


class DegeneratePlane(K3ConeError):
    """Section plane misses the interior of the positive cone."""


class BadInput(K3ConeError):
    """A documented precondition was violated."""


class DegenerateConfiguration(K3ConeError):
    """The (e, d, l) triple fails the nondegeneracy guard 2B^2 != A*C^2."""


class InternalGuard(K3ConeError):
    """An invariant the theory forces was violated; indicates a bug."""


class CertificateInvalid(K3ConeError):
    """A congruence certificate is not consistent with the Gram matrix."""

"""
Exception hierarchy shared by every analyzer.
"""
from __future__ import annotations


class AlgebraError(ValueError):
    """Raised when an input or a request violates a structural precondition."""


class BadParameters(AlgebraError):
    """Family parameters violate the family's admissibility constraints."""


class TooLarge(AlgebraError):
    """A constructor was asked for a carrier above its size cap."""


class CapExceeded(AlgebraError):
    """An exhaustive search was demanded above the configured cap."""


class SchemaError(AlgebraError):
    """A JSON document does not match its schema."""


class IndexOutOfRange(AlgebraError):
    """A table entry points outside the carrier."""


class DuplicateLabel(AlgebraError):
    """Two elements share one label."""


class UnknownLabel(AlgebraError):
    """A label is not part of the carrier or universe."""


class NotApplicable(AlgebraError):
    """The identity or analysis needs structure the magma lacks."""


class NoIdentity(AlgebraError):
    """The magma has no two-sided identity."""


class NotALoop(AlgebraError):
    """The magma is not a loop."""


class WrongBaseKind(AlgebraError):
    """The structure is not of the kind the detection starts from."""


class NestedSupports(AlgebraError):
    """One component support contains another."""


class UncoveredUniverse(AlgebraError):
    """The supports do not cover exactly the declared universe."""


class UndeclaredSharing(AlgebraError):
    """A label lies in several supports without being declared shared, or vice versa."""


class NotABiset(AlgebraError):
    """A split A = A_1 ∪ A_2 has one part inside the other."""


class AlgebraMismatch(AlgebraError):
    """Two convolution elements belong to different algebras."""


class CoefficientOverflow(AlgebraError):
    """An integer coefficient left the configured magnitude bound."""


class NoTorsion(AlgebraError):
    """The basis element has no finite order above one."""


class NonAssociativeBasis(AlgebraError):
    """The operation needs an associative basis magma."""


class NotNearRing(AlgebraError):
    """The two-operation table is not a right near-ring."""


class NotPlanar(AlgebraError):
    """The near-ring is not planar."""


class NotBalanced(AlgebraError):
    """The block family is not a balanced design."""

    def __init__(self, message: str, histogram: dict[int, int] | None = None):
        super().__init__(message)
        self.histogram = histogram or {}


class NotAdditive(AlgebraError):
    """No input x_0 makes the transition function additive."""


class ComponentMismatch(AlgebraError):
    """Vectors or maps from different components were combined."""

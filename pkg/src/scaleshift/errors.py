"""Exception and warning types raised across the package.

The hierarchy groups failures by how a caller should react:

* ``SchemaError`` -- the input itself is malformed (bad JSON, unknown
  family tag, a term that mixes parameter kinds).
* ``DomainError`` -- the inputs are well-formed but violate a mathematical
  precondition of the chosen family or scheme.
* ``AmbiguityError`` -- parameter identification could not be completed
  within the sampling budget.
* ``NumericalError`` -- a linear-algebra stage degenerated.

The command line maps these groups onto exit codes 2, 3, 4 and 5.
"""

from __future__ import annotations


class ScaleShiftError(Exception):
    """Base class for every error raised by this package."""


class SchemaError(ScaleShiftError, ValueError):
    """Malformed model, scheme, or sample input."""


class ZeroCoefficient(SchemaError):
    """A term carries a zero weight, which breaks every rank contract."""


class MissingSample(SchemaError, KeyError):
    """A required sample index is absent from the sample set."""

    def __init__(self, index: object) -> None:
        super().__init__(index)
        self.index = index

    def __str__(self) -> str:  # KeyError quotes its payload; keep it readable
        return f"sample at index {self.index!r} was never provided"


class DomainError(ScaleShiftError, ValueError):
    """A mathematical precondition of the family or scheme is violated."""


class GammaPole(DomainError):
    """A gamma-family sample location hit a pole of the gamma function.

    A complex shift moves the evaluation line away from the nonpositive
    integers; the message carries that guidance.
    """


class AmbiguityError(ScaleShiftError):
    """Parameter identification failed within the sampling budget."""


class EmptyIntersection(AmbiguityError):
    """No candidate survived the intersection of the dilation and
    translation candidate sets; the data is inconsistent with the model."""


class MultipleMatches(AmbiguityError):
    """Two or more distinct candidates reproduce every measured sample."""


class StillAmbiguous(AmbiguityError):
    """More than one candidate survived even the third-shift escalation."""


class NeedsThirdValue(AmbiguityError):
    """Two candidates survived the two-shift intersection and escalation
    was disabled, so a third shifted evaluation would be required."""


class NonIntegerCandidate(AmbiguityError):
    """An integer-degree family produced a candidate too far from any
    integer to snap (distance above the snap tolerance)."""


class NumericalError(ScaleShiftError):
    """A linear-algebra stage degenerated beyond the configured tolerance."""


class SingularB(NumericalError):
    """The right-hand matrix of a pencil is numerically singular."""


class NoConvergence(NumericalError):
    """The QZ iteration failed to converge."""


class DegenerateNodes(NumericalError):
    """Two recovered nodes coincide, so downstream systems are singular."""


class NearZeroVectorEntry(NumericalError):
    """An eigenvector entry used as a quotient denominator is near zero."""


class SinNodeZero(NumericalError):
    """A weight division hit sin of a recovered node that is near zero."""


class PoleDetected(NumericalError):
    """A recovered nonlinear parameter sits on a pole of the base function
    (for instance a zero frequency in the sinc family)."""


class PairingFailure(NumericalError):
    """Eigenvector correlation could not pair two pencils unambiguously."""


class CollisionDetected(NumericalError):
    """Two projected eigenvalues coincide, so the one-dimensional
    projection cannot separate the terms; choose another direction."""


class DependentDirections(DomainError):
    """The supplied sampling directions are linearly dependent."""


class SingularDirections(NumericalError):
    """The direction system solving for parameter vectors is singular."""


class ClusterWarning(UserWarning):
    """Two pencil eigenvalues are close enough to degrade conditioning."""

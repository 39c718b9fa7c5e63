"""Exceptions raised by *hgfnet*.

Every error derives from :class:`HgfError`. Validation failures collect all
of the problems found in a record before raising, in the manner of
:class:`ValidationException`; the remaining errors signal one failure each
and carry the indices needed to locate it.
"""
from typing import Optional


class HgfError(Exception):
    """Root of the *hgfnet* exception hierarchy."""


class ValidationException(HgfError, ValueError):
    """Exception used to signal validation errors."""

    def __init__(self, validation_errors=None):
        """

        :param validation_errors: A list of validation failures that are
            triggering the *ValidationException*.
        :type validation_errors: list<str>
        """
        if isinstance(validation_errors, str):
            validation_errors = [validation_errors]
        self._validation_errors = validation_errors if validation_errors else []
        message = str.join(' \n', self._validation_errors)
        super(ValidationException, self).__init__(message)

    @property
    def validation_errors(self) -> list[str]:
        """List of validation errors that triggered the *ValidationException*.

        :return: A list of the validation errors encountered.
        """
        return self._validation_errors


class InvalidAttributeError(ValidationException):
    """Node attributes violate their schema."""


class ConfigParseError(ValidationException):
    """A model configuration does not meet its schema.

    Each validation error is prefixed with the dotted path of the offending
    key.
    """


class IngestionError(ValidationException):
    """An input series file holds values the model cannot consume."""

    def __init__(self, validation_errors=None, row: Optional[int] = None):
        self.row = row
        super(IngestionError, self).__init__(validation_errors)


class StructureError(HgfError):
    """A structural mutation would break the network invariants."""


class CycleError(StructureError):
    """The edges would no longer form a directed acyclic graph."""


class DuplicateEdgeError(StructureError):
    """The edge is already present."""


class CouplingError(StructureError):
    """The coupling is not supported between the given node kinds."""


class NodeIndexError(StructureError, IndexError):
    """A node index is outside of the network."""

    def __init__(self, index: int, size: int):
        self.index = index
        self.size = size
        super(NodeIndexError, self).__init__(
            'Node index %s is out of range for a network of %s nodes.' %
            (index, size))


class NumericalFailureError(HgfError, ArithmeticError):
    """An update function produced a non-positive precision or a non-finite
    value."""

    def __init__(self, node: int, step: int, reason: str):
        self.node = node
        self.step = step
        self.reason = reason
        super(NumericalFailureError, self).__init__(
            'Numerical failure at node %s, time step %s: %s' %
            (node, step, reason))


class SequencingError(HgfError):
    """An update step was applied out of order."""


class ObservationError(HgfError, ValueError):
    """An observation cannot be received by its target node."""


class EmptyInputError(HgfError, ValueError):
    """An operation received an empty input series or trajectory."""


class PropagationError(HgfError):
    """A time step failed while running a network over an input series."""

    def __init__(self, row: int, cause: Exception):
        self.row = row
        self.cause = cause
        super(PropagationError, self).__init__(
            'Belief propagation failed at row %s: %s' % (row, cause))


class DomainError(HgfError, ValueError):
    """A value lies outside the domain of a density or response function."""


class AlignmentError(HgfError, ValueError):
    """Series that must be aligned one to one have different lengths."""


class SamplerFailureError(HgfError):
    """A Markov chain could not move from its starting point."""


class OptimizationFailureError(HgfError):
    """No optimization start reached a finite objective."""


class DiagnosticsError(HgfError):
    """Convergence diagnostics cannot be computed for the given draws."""

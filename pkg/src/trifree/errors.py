"""Exceptions shared across the package."""


class TrifreeError(Exception):
    """Base class for every error this package raises deliberately."""


class GraphInputError(TrifreeError):
    """Malformed construction data or unparseable text input."""


class SizeLimitError(TrifreeError):
    """An instance exceeds a documented size cap for the requested operation."""


class MalformedCertificateError(TrifreeError):
    """A certificate references arcs or points that do not exist in the instance."""


class NotThreeFreeError(TrifreeError):
    """A precondition required a digraph with no directed cycle of length at most 3."""

    def __init__(self, message: str, cycle=None):
        super().__init__(message)
        self.cycle = cycle


class PartitionError(TrifreeError):
    """A claimed vertex partition is not a partition or lacks the claimed structure."""


class EmptyInputError(TrifreeError):
    """An operation that needs at least one vertex or entry received none."""


class ShapeError(TrifreeError):
    """Input dimensions are incompatible with the requested operation."""


class StructureError(TrifreeError):
    """A graph does not match the combinatorial structure it was claimed to have."""


class StructureViolationError(StructureError):
    """Recognition failed: the graph fits none of the expected structure classes.

    Carries the partial analysis so callers can surface exactly which
    condition failed instead of a bare boolean.
    """

    def __init__(self, message: str, details=None):
        super().__init__(message)
        self.details = details

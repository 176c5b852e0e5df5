"""Exception hierarchy shared by every module of the package."""


class GQCError(Exception):
    """Base class for all package errors."""


class DomainError(GQCError, ValueError):
    """A scalar argument lies outside its admissible range."""


class ShapeError(GQCError, ValueError):
    """Array shape and declared local dimensions disagree."""


class NormalizationError(GQCError, ValueError):
    """A state vector is not normalized, or a density matrix has trace != 1."""


class SymmetryError(GQCError, ValueError):
    """A matrix that must be Hermitian (or PSD) is not, beyond tolerance."""


class PartitionError(GQCError, ValueError):
    """A bipartition or set of kept parties is empty, full, or malformed."""


class ResourceError(GQCError):
    """The requested party count exceeds the configured cap."""


class DegenerateWitnessError(GQCError, ValueError):
    """A witness state has no usable Schmidt data."""

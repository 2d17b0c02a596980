"""Exception hierarchy shared by every module."""


class OrientRamseyError(Exception):
    """Base class for all library errors."""


class ParseError(OrientRamseyError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class GraphValidationError(OrientRamseyError, ValueError):
    """Loops, parallel edges, out-of-range vertices, digons."""


class DomainError(OrientRamseyError, ValueError):
    """An operation was called outside its domain."""


class DensityEnvelopeError(DomainError):
    """Exact density requested for a graph larger than the exhaustive envelope."""


class PreconditionError(DomainError):
    """A theorem's hypothesis does not hold for the given input.

    ``report`` carries whatever witnesses the failing check produced
    (a DensityReport, an obstruction subgraph, ...).
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NotABConstructibleError(PreconditionError):
    """Some K3-component admits a construction sequence with a type-C step."""

    def __init__(self, message: str, component=None, obstruction=None, obstruction_kind=None):
        super().__init__(message, report=obstruction)
        self.component = component
        self.obstruction = obstruction
        self.obstruction_kind = obstruction_kind


class UnsupportedPatternError(DomainError):
    """Pattern lies outside every class the orienters know how to avoid."""


class GrammarViolation(OrientRamseyError):
    """A construction step matched neither an A_j nor a B_k configuration."""


class BlockOrientationError(OrientRamseyError):
    def __init__(self, message: str, block=None, cause=None):
        super().__init__(message)
        self.block = block
        self.cause = cause


class VerificationError(OrientRamseyError, AssertionError):
    """An orienter produced an orientation that still contains the pattern."""

"""Exception types shared across the package."""


class FksoError(Exception):
    """Base class for all package errors."""


class ParseError(FksoError):
    """Instance document is malformed."""


class ValidationError(FksoError):
    """Instance violates a structural invariant (carries the witness)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ArgumentError(FksoError):
    """Generator or solver called with infeasible parameters."""


class RankOutOfRange(FksoError):
    """Requested rank exceeds the size of the facility set."""


class NumericalFailure(FksoError):
    """LP backend could not certify feasibility or infeasibility."""


class Infeasible(FksoError):
    """No candidate radius admits a solution."""


class PreconditionViolated(FksoError):
    """Operation called outside its contract."""


class IterationCapExceeded(FksoError):
    """Round-or-cut loop exceeded its diagnostic iteration cap."""


class BudgetExceeded(FksoError):
    """Brute-force enumeration would exceed the subset budget."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required

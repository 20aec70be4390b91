"""Exception hierarchy shared by all torq modules."""


class TorqError(Exception):
    """Base class for every error raised by torq."""


class InvalidInput(TorqError):
    """Input data is malformed or violates a stated precondition."""


class DimensionMismatch(InvalidInput):
    pass


class NotASublattice(InvalidInput):
    pass


class EmptyGenerators(InvalidInput):
    pass


class ImageNotInTarget(InvalidInput):
    pass


class RelationsNotRespected(InvalidInput):
    pass


class NotToric(InvalidInput):
    """Some M-homogeneous component of a generator escapes the ideal."""

    def __init__(self, message, component=None):
        super().__init__(message)
        self.component = component


class InvalidAmbient(InvalidInput):
    pass


class NotASubmonoid(InvalidInput):
    pass


class NonPointedUnsupported(InvalidInput):
    pass


class NotACocycle(InvalidInput):
    pass


class GNotInI(InvalidInput):
    pass


class BudgetExceeded(TorqError):
    """A configurable search or size bound was hit before a decision."""

    def __init__(self, message, limit=None):
        super().__init__(message)
        self.limit = limit


class FiberBudgetExceeded(BudgetExceeded):
    pass


class DegreeBudgetExceeded(BudgetExceeded):
    pass


class NotAnEquivalenceRelation(TorqError):
    def __init__(self, message, data=None):
        super().__init__(message)
        self.data = data or {}


class InternalInvariantViolated(TorqError):
    """A step that must succeed for genuine inputs did not."""


class BinomialityViolated(InternalInvariantViolated):
    pass


class NotDifferenceGenerated(InternalInvariantViolated):
    pass

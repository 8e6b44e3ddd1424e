"""Exception types shared across the package."""


class IsomatError(Exception):
    """Base class for all library errors."""


class IndexMismatch(IsomatError):
    pass


class SingularPivot(IsomatError):
    pass


class CapExceeded(IsomatError):
    """A desk-scale cap on enumeration size was exceeded."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class UnknownVertex(IsomatError):
    pass


class NotAnEdge(IsomatError):
    pass


class LoopedEndpoint(IsomatError):
    pass


class UnknownElement(IsomatError):
    pass


class NotABasis(IsomatError):
    pass


class ElementInBasis(IsomatError):
    pass


class IsolatedVertex(IsomatError):
    pass


class NotStable(IsomatError):
    pass


class NotSubtransversal(IsomatError):
    pass


class NotATransversal(IsomatError):
    pass


class NotParallel(IsomatError):
    pass


class BothPhi(IsomatError):
    pass


class NotTight(IsomatError):
    pass


class NotBinary(IsomatError):
    pass


class ClassNotInCycleSpace(IsomatError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(IsomatError):
    """Generic violated precondition (wrong partition shape, non-strict shelter, ...)."""


class HypothesisNotMet(IsomatError):
    pass


class NotAForest(IsomatError):
    pass


class WrongOrder(IsomatError):
    pass


class ParseError(IsomatError):
    pass

"""Exception hierarchy.  Every error raised on purpose derives from DomainError."""


class DomainError(Exception):
    """Mathematical precondition failed; the CLI maps this to exit code 1."""


class IncompatibleOrder(DomainError):
    pass


class FrameMismatch(DomainError):
    pass


class InexactDivision(DomainError):
    pass


class NotSquare(DomainError):
    pass


class Singular(DomainError):
    pass


class Inconsistent(DomainError):
    pass


class OrderCapExceeded(DomainError):
    pass


class UnknownGroup(DomainError):
    pass


class GroupTooLarge(DomainError):
    pass


class FactorizationFailed(DomainError):
    pass


class NotInvariant(DomainError):
    pass


class NoAdmissibleTriplet(DomainError):
    def __init__(self, msg, a=None, b=None):
        super().__init__(msg)
        self.a = a
        self.b = b


class TripletCheckFailed(DomainError):
    pass


class InvalidZeta(DomainError):
    pass


class NotCompatible(DomainError):
    pass


class NotGood(DomainError):
    pass


class LemmaViolation(DomainError):
    pass


class NotDualityGroup(DomainError):
    pass


class ConsistencyFailure(DomainError):
    pass


class NotCoxeter(DomainError):
    pass


class SingularBlock(DomainError):
    pass


class UnsupportedParams(DomainError):
    pass


class SplitFailed(DomainError):
    pass


class GradientCheckFailed(DomainError):
    pass


class UnexpectedFormDimension(DomainError):
    pass

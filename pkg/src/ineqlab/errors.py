"""Exception types raised across the package."""


class IneqLabError(Exception):
    """Base class for all package errors."""


class DuplicateNodes(IneqLabError, ValueError):
    pass


class DomainExceeded(IneqLabError, ValueError):
    pass


class DegenerateInterval(IneqLabError, ValueError):
    pass


class SlopeTooSmall(IneqLabError, ValueError):
    pass


class AuditMismatch(IneqLabError):
    """Declared shape flags disagree with the measured ones."""


class UnknownFunction(IneqLabError, KeyError):
    pass


class LengthMismatch(IneqLabError, ValueError):
    pass


class SizeOrder(IneqLabError, ValueError):
    pass


class PreconditionFailed(IneqLabError, ValueError):
    pass


class TooLarge(IneqLabError, ValueError):
    pass


class SvdFailure(IneqLabError, ArithmeticError):
    pass


class OutOfRange(IneqLabError, ValueError):
    pass


class NotSymmetric(IneqLabError, ValueError):
    pass


class NotPsd(IneqLabError, ValueError):
    pass


class NegativeDeterminant(IneqLabError, ValueError):
    pass


class DimensionMismatch(IneqLabError, ValueError):
    pass


class NotInnerProduct(IneqLabError, ValueError):
    pass


class NotInPositiveCone(IneqLabError, ValueError):
    pass


class HypothesisFailed(IneqLabError):
    pass


class BadP(IneqLabError, ValueError):
    pass


class BadAlpha(IneqLabError, ValueError):
    pass


class BadSpace(IneqLabError, ValueError):
    pass


class UnknownCheck(IneqLabError, KeyError):
    pass

"""Exception types shared across the package."""


class LocalInvError(Exception):
    """Base class for every error raised by this package."""


class InversionOfZero(LocalInvError, ZeroDivisionError):
    pass


class MismatchedField(LocalInvError, ValueError):
    pass


class ValueOutOfRange(LocalInvError, ValueError):
    pass


class DimensionMismatch(LocalInvError, ValueError):
    pass


class InsufficientTerms(LocalInvError, ValueError):
    pass


class ZeroConstantTerm(LocalInvError, ValueError):
    """A polynomial with zero constant term has no order and no inverse formula."""


class ExceedsBound(LocalInvError):
    """The polynomial order is larger than the requested bound."""


class IndexOutOfRange(LocalInvError, IndexError):
    pass


class MapEvaluationError(LocalInvError):
    """A black-box map could not be evaluated at the given input."""


class InfinityEncoding(MapEvaluationError):
    """The scalar multiple is the point at infinity, which has no bit encoding."""


class NotOnCurve(LocalInvError, ValueError):
    pass


class DomainTooLarge(LocalInvError, ValueError):
    pass


class NotPeriodic(LocalInvError, ValueError):
    pass

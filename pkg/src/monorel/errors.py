"""Exception hierarchy shared by every module of the package."""


class MonorelError(Exception):
    """Base class for all errors raised by monorel."""


class DimensionMismatch(MonorelError, ValueError):
    pass


class NotSymmetricMatrix(MonorelError, ValueError):
    pass


class NotConvexOnDomain(MonorelError):
    """The quadratic part is not positive semidefinite on the domain."""


class EmptyDomain(MonorelError):
    """The function would be identically +inf."""


class NotProper(MonorelError):
    pass


class InnerNotConcave(MonorelError):
    """A supremum over a subspace is +inf everywhere (inner problem not concave)."""


class MinusInfinity(MonorelError):
    """An infimum evaluates to -inf, so the result is not proper."""


class PointOutsideDomain(MonorelError, ValueError):
    pass


class NotMonotone(MonorelError):
    pass


class NotSymmetric(MonorelError):
    pass


class NotMaximal(MonorelError):
    pass

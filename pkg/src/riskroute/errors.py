"""Exception types shared across the package."""


class RiskRouteError(Exception):
    """Base class for all package errors."""


class ZeroMassError(RiskRouteError):
    """A conditioning event carries (numerically) no probability mass."""


class UnsupportedDistribution(RiskRouteError):
    """The operation is not defined for this distribution kind."""


class DomainError(RiskRouteError):
    """An argument leaves the stated domain of a utility or distortion."""


class NoPathError(RiskRouteError):
    """No path connects the requested origin to the destination."""


class NegativeCycleError(RiskRouteError):
    """The network contains a cycle of negative total weight."""


class CapacityError(RiskRouteError):
    """Brute-force enumeration would exceed the safety cap."""


class NonAdditiveSpecError(RiskRouteError):
    """Arc-wise shortest path search was requested for a measure that does
    not decompose over independent sums; use the brute-force solver."""


class MonotonicityError(RiskRouteError):
    """A flow-dependent latency family yields a decreasing link cost."""


class NonConvergence(RiskRouteError):
    """An iterative solver hit its iteration cap.

    Carries the best iterate found so far in ``best``.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best

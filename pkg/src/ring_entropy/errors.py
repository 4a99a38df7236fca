"""Exception hierarchy shared by every module of the package."""


class RingEntropyError(Exception):
    """Base class for all errors raised by ring_entropy."""


class DomainError(RingEntropyError, ValueError):
    """Argument outside the domain of a function."""


class UnsupportedOrderError(RingEntropyError, ValueError):
    pass


class PrecisionLossError(RingEntropyError, ArithmeticError):
    """Summation lost more digits than the accuracy contract allows."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class RuleConstructionError(RingEntropyError):
    pass


class EvaluationError(RingEntropyError):
    """Integrand produced a non-finite value at a quadrature node."""


class DivergenceError(RingEntropyError):
    """Semi-infinite integral keeps growing under cutoff doubling.

    ``growth_ratio`` is the ratio of the last two doubling increments;
    a value at or above one means the tail contributes at least as much
    on ``[2X, 4X]`` as on ``[X, 2X]``.
    """

    def __init__(self, message, growth_ratio):
        super().__init__(message)
        self.growth_ratio = growth_ratio


class ToleranceNotMetError(RingEntropyError):
    def __init__(self, message, value=None, abs_error_estimate=None):
        super().__init__(message)
        self.value = value
        self.abs_error_estimate = abs_error_estimate


class DegenerateParameterError(RingEntropyError, ValueError):
    pass


class BelowThresholdError(RingEntropyError):
    """Momentum measure requested at a parameter where it does not exist."""

    def __init__(self, message, alpha=None, threshold=None):
        super().__init__(message)
        self.alpha = alpha
        self.threshold = threshold


class UnsupportedOrbitalError(RingEntropyError, ValueError):
    pass


class UnknownKindError(RingEntropyError, KeyError):
    pass


class RootNotBracketedError(RingEntropyError):
    """No sign change found for a root search."""

"""Exception hierarchy shared by all modules."""


class SFFError(Exception):
    """Base class for errors raised by sffbound."""


class InvalidArgument(SFFError, ValueError):
    pass


class DomainError(SFFError, ValueError):
    """Complex temperature outside the region where a quantity converges."""


class NumericalFailure(SFFError, ArithmeticError):
    pass


class BracketError(NumericalFailure):
    """Root bracket without a sign change."""


class SingularPointError(NumericalFailure):
    """Evaluation at a zero of the SFF, where log-derivatives diverge."""


class SearchFailure(NumericalFailure):
    """No inflection point found in the search window.

    ``scan`` holds the coarse ``(times, d/dt(Sdot/S))`` data for diagnosis.
    """

    def __init__(self, message, scan=None):
        super().__init__(message)
        self.scan = scan

"""Exception types shared by the numerical modules."""


class DomainError(ValueError):
    """Argument outside the domain where a function is defined or supported."""


class ConvergenceError(ArithmeticError):
    """A series or quadrature failed to reach its tolerance within the cap.

    ``err_est`` and ``levels`` carry whatever diagnostics were available when
    the iteration stopped.
    """

    def __init__(self, message, err_est=float("nan"), levels=0):
        super().__init__(message)
        self.err_est = err_est
        self.levels = levels


class AccuracyWarning(UserWarning):
    """Result returned, but the evaluation route is known to lose digits here."""

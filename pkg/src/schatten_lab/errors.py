class SchattenLabError(Exception):
    pass


class DomainError(SchattenLabError, ValueError):
    """Input outside the mathematical domain of an operation."""


class EigenError(SchattenLabError, ArithmeticError):
    """Eigensolver failure; ``residual`` is the reconstruction error if known."""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(f"{message} (residual={residual:.3e})")
        self.residual = residual


class SchemeError(SchattenLabError, ArithmeticError):
    """Quadrature calibration produced a non-finite or non-positive value."""


class NotMajorizedError(SchattenLabError, ValueError):
    pass


class InadmissibleTargetError(SchattenLabError, ValueError):
    """Requested eigenvalue of A+B cannot be realised (positive quartic product)."""

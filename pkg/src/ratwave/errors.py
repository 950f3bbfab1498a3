"""Exception types raised across the package."""


class RatwaveError(Exception):
    """Base class for all package errors."""


class ModeMismatch(RatwaveError, TypeError):
    """Operands mix rational and float scalars."""


class ZeroConstantTerm(RatwaveError, ZeroDivisionError):
    """Power-series inversion of a polynomial with p(0) == 0."""


class SingularSystem(RatwaveError):
    """Float elimination hit a (numerically) zero pivot."""


class DegeneratePair(RatwaveError, ValueError):
    """Pair with alpha(0) == beta(0) == 0, or with a vanishing norm constant."""


class RoundTripMismatch(RatwaveError):
    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual!r})")
        self.residual = residual


class NotParaunitary(RatwaveError, ValueError):
    """Bank fails the quadratic (shift-orthogonality) condition."""


class DegreeMismatch(RatwaveError, ValueError):
    """Polynomial degree exceeds what the target genus allows."""


class UnsupportedGenus(RatwaveError, ValueError):
    pass


class RootFindingFailure(RatwaveError):
    pass


class BudgetExceeded(RatwaveError):
    """Screening would evaluate more candidates than the configured cap."""

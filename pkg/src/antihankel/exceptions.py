"""Exception types raised by the solver stack."""


class AntiHankelError(Exception):
    """Base class for all diagnostic errors of this package."""

    code = "ANTIHANKEL_ERROR"

    def to_dict(self):
        return {"type": self.code, "message": str(self)}


class PoleProximityError(AntiHankelError, ValueError):
    """A rational function was evaluated too close to one of its poles."""

    code = "POLE_PROXIMITY"


class DegenerateDenominatorError(AntiHankelError, ArithmeticError):
    """The closed-form eigenvector denominator ``b*F(mu;0,0) + n + 2`` vanishes."""

    code = "DEGENERATE_DENOMINATOR"


class PoleValueInputError(AntiHankelError, ValueError):
    """A closed-form eigenvector was requested at a pole value."""

    code = "POLE_VALUE_INPUT"


class CompletenessError(AntiHankelError, RuntimeError):
    """The solver could not account for all ``n + 2`` eigenvalues.

    The partially assembled result is kept on ``partial`` for inspection.
    """

    code = "INCOMPLETE_SPECTRUM"

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotSymmetricError(AntiHankelError, ValueError):
    code = "NOT_SYMMETRIC"


class ConvergenceError(AntiHankelError, RuntimeError):
    code = "NO_CONVERGENCE"

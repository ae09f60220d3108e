"""Exception types raised across the library."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SingularityError(DomainError):
    """Evaluation at a pole of the vector field (e.g. S = 0 in the
    prevention system, whose tax equation contains a delta/S term)."""


class NonHyperbolicError(RuntimeError):
    """Equilibrium classification is undefined: a zero/pure-imaginary
    eigenvalue or a defective (non-diagonalizable) Jacobian."""


class StructureError(RuntimeError):
    """The phase-plane structure required by a solver is absent
    (target equilibrium missing or not a saddle, degenerate shot path)."""


class BracketError(RuntimeError):
    """Shooting bisection could not start: both ends of the initial
    bracket classify on the same side."""


class KindMismatchError(ValueError):
    """A trajectory of one policy kind was passed to an operation that
    requires the other kind."""


class InfeasibleError(RuntimeError):
    """A constant-tax policy implies an instrument level outside [0, 1]
    somewhere along the induced epidemic path."""


class StiffnessError(RuntimeError):
    """Adaptive step size underflowed; the problem is too stiff for the
    explicit integrator."""


class DomainBreach(RuntimeError):
    """The right-hand side raised a domain error mid-integration.

    Carries the partial trajectory accumulated up to the failure in the
    ``trajectory`` attribute.
    """

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory

"""First-order-condition planar systems for the two policy problems.

Prevention lives in (S, tau) coordinates:

    dS/dt   = delta(1-S) - alpha(1-tau) S (1-S)
    dtau/dt = (1+tau)[rho - 2 alpha S + delta - alpha(1-tau) S + delta/S]

Treatment lives in (S, phi) with phi = 1 - S + tau*S:

    dS/dt   = delta*phi - alpha S (1-S)
    dphi/dt = phi[rho + alpha(1 - 2S)]

Each system has a boundary equilibrium E1 on S = 1 (a saddle in the
relevant parameter region, whose stable manifold carries the optimal
policy path) and an interior equilibrium E2 (unstable).  Jacobians here
are derived by differentiating the implemented vector fields and are
cross-checked against central finite differences in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .epidemic import ModelParams
from .errors import DomainError, NonHyperbolicError, SingularityError

PREVENTION = "prevention"
TREATMENT = "treatment"

SADDLE = "saddle"
UNSTABLE = "unstable"
STABLE = "stable"
NON_HYPERBOLIC = "non-hyperbolic"


@dataclass(frozen=True)
class PhasePoint:
    """A state of a controlled planar system: susceptible share s and the
    control coordinate c (tau for prevention, phi for treatment).

    System states have s in [0, 1], with c in [0, 1] for prevention and
    c >= 0 for treatment; those domains are enforced by the vector-field
    operations.  The constructor only requires finite coordinates, so
    reports for nonexistent equilibria can still carry their (out of
    range) formula values.
    """

    s: float
    c: float

    def __post_init__(self):
        if not (math.isfinite(self.s) and math.isfinite(self.c)):
            raise DomainError(f"coordinates must be finite, got ({self.s}, {self.c})")

    def as_tuple(self) -> tuple[float, float]:
        return self.s, self.c


@dataclass(frozen=True)
class EquilibriumReport:
    """An equilibrium with existence flag, eigen-data and stability class.

    coords is in the system's native coordinates ((S, tau) for prevention,
    (S, phi) for treatment); coords_tau is the same point expressed in
    (S, tau).  When exists is False, the violated condition is named and
    the jacobian/eigen fields are None.  tau_feasible is set only on the
    treatment E2 report (whether the induced tax lies strictly in (0, 1)).
    """

    name: str
    system: str
    coords: PhasePoint
    coords_tau: PhasePoint
    exists: bool
    violated: str | None = None
    jacobian: np.ndarray | None = None
    eigenvalues: tuple[complex, complex] | None = None
    stable_eigenvector: np.ndarray | None = None
    classification: str | None = None
    tau_feasible: bool | None = None


def prevention_rhs(pt: PhasePoint, params: ModelParams) -> tuple[float, float]:
    """(dS/dt, dtau/dt) of the prevention system.  S = 0 is a pole of the
    tau equation (delta/S term)."""
    if pt.s == 0.0:
        raise SingularityError("prevention system is singular at s = 0")
    return _kernels.prev_rhs(pt.s, pt.c, params.alpha, params.delta, params.rho)


def treatment_rhs(pt: PhasePoint, params: ModelParams) -> tuple[float, float]:
    """(dS/dt, dphi/dt) of the treatment system (polynomial, no poles)."""
    if pt.c < 0.0:
        raise DomainError(f"phi must be nonnegative, got {pt.c}")
    return _kernels.treat_rhs(pt.s, pt.c, params.alpha, params.delta, params.rho)


def prevention_field(params: ModelParams):
    """Prevention rhs as an integrand callable f(t, (s, c)) -> (ds, dc)."""
    a, d, r = params.alpha, params.delta, params.rho

    def field(t, y):
        s, c = y
        if s <= 0.0:
            raise SingularityError("prevention system is singular at s <= 0")
        return _kernels.prev_rhs(s, c, a, d, r)

    return field


def treatment_field(params: ModelParams):
    """Treatment rhs as an integrand callable f(t, (s, c)) -> (ds, dc)."""
    a, d, r = params.alpha, params.delta, params.rho

    def field(t, y):
        s, c = y
        return _kernels.treat_rhs(s, c, a, d, r)

    return field


def phi_from_tau(s: float, tau: float) -> float:
    """phi = 1 - s + tau*s, the treatment substitution coordinate."""
    return 1.0 - s + tau * s


def tau_from_phi(s: float, phi: float) -> float:
    """Inverse substitution tau = (phi - 1 + s)/s; singular at s = 0."""
    if s == 0.0:
        raise SingularityError("tau_from_phi undefined at s = 0")
    return (phi - 1.0 + s) / s


def jacobian(system: str, at: PhasePoint, params: ModelParams) -> np.ndarray:
    """Analytic Jacobian of the chosen system's vector field at a point,
    rows ordered (dS/dt, dcontrol/dt) and columns (s, control)."""
    a, d, r = params.alpha, params.delta, params.rho
    s, c = at.s, at.c
    if system == PREVENTION:
        if s == 0.0:
            raise SingularityError("prevention system is singular at s = 0")
        return np.array([
            [-d - a * (1.0 - c) * (1.0 - 2.0 * s), a * s * (1.0 - s)],
            [(1.0 + c) * (-2.0 * a - a * (1.0 - c) - d / s**2),
             (r - 2.0 * a * s + d - a * (1.0 - c) * s + d / s) + (1.0 + c) * a * s],
        ])
    if system == TREATMENT:
        return np.array([
            [-a * (1.0 - 2.0 * s), d],
            [-2.0 * a * c, r + a * (1.0 - 2.0 * s)],
        ])
    raise ValueError(f"unknown system {system!r}")


def classify_jacobian(J: np.ndarray):
    """Closed-form 2x2 eigen-analysis and hyperbolic classification.

    Returns (classification, (eig1, eig2), stable_eigenvector) with
    eigenvalues ordered by descending real part.  The eigenvector is
    returned only for saddles (for the negative eigenvalue), normalized
    to unit length with nonnegative first component (ties broken by
    nonnegative second component).  Raises NonHyperbolicError for zero or
    purely imaginary eigenvalues and for defective repeated eigenvalues.
    """
    a, b = float(J[0, 0]), float(J[0, 1])
    c, d = float(J[1, 0]), float(J[1, 1])
    tr = a + d
    det = a * d - b * c
    disc = tr * tr - 4.0 * det

    if disc > 0.0:
        sq = math.sqrt(disc)
        lam1 = (tr + sq) / 2.0
        lam2 = (tr - sq) / 2.0
        if lam1 == 0.0 or lam2 == 0.0:
            raise NonHyperbolicError("zero eigenvalue: classification undefined")
        eigs = (complex(lam1), complex(lam2))
        if det < 0.0:
            vec = _eigenvector(a, b, c, d, lam2)
            return SADDLE, eigs, vec
        return (UNSTABLE, eigs, None) if lam1 > 0.0 else (STABLE, eigs, None)

    if disc == 0.0:
        lam = tr / 2.0
        if b != 0.0 or c != 0.0:
            raise NonHyperbolicError(
                "defective repeated eigenvalue: classification undefined")
        if lam == 0.0:
            raise NonHyperbolicError("zero eigenvalue: classification undefined")
        eigs = (complex(lam), complex(lam))
        return (UNSTABLE, eigs, None) if lam > 0.0 else (STABLE, eigs, None)

    im = math.sqrt(-disc) / 2.0
    re = tr / 2.0
    if re == 0.0:
        raise NonHyperbolicError("purely imaginary eigenvalues (center)")
    eigs = (complex(re, im), complex(re, -im))
    return (UNSTABLE, eigs, None) if re > 0.0 else (STABLE, eigs, None)


def _eigenvector(a, b, c, d, lam):
    # (A - lam I) v = 0; take the better-conditioned row
    if abs(b) >= abs(c):
        v = np.array([b, lam - a])
    else:
        v = np.array([lam - d, c])
    n = float(np.hypot(v[0], v[1]))
    if n == 0.0:  # diagonal matrix: eigenvector along the matching axis
        v = np.array([1.0, 0.0]) if lam == a else np.array([0.0, 1.0])
        n = 1.0
    v = v / n
    if v[0] < 0.0 or (v[0] == 0.0 and v[1] < 0.0):
        v = -v
    return v


def _finished_report(name, system, coords, coords_tau, params, **extra):
    J = jacobian(system, coords, params)
    try:
        cls, eigs, vec = classify_jacobian(J)
    except NonHyperbolicError:
        cls, eigs, vec = NON_HYPERBOLIC, None, None
    return EquilibriumReport(name=name, system=system, coords=coords,
                             coords_tau=coords_tau, exists=True,
                             jacobian=J, eigenvalues=eigs,
                             stable_eigenvector=vec, classification=cls,
                             **extra)


def prevention_equilibria(params: ModelParams):
    """Reports for the prevention equilibria E1 and E2.

    E1 = (1, (3a-2d-r)/a) requires 2a < 2d+r < 3a for the long-run tax to
    lie in (0, 1); E2 is interior and requires
    1 > max{2d/(a+r), (d+r)/(2a)}.  Nonexistent equilibria still report
    their coordinates, with the violated inequality named.
    """
    a, d, r = params.alpha, params.delta, params.rho
    if a == 0.0:
        raise DomainError("prevention equilibria undefined for alpha = 0")

    tau_bar1 = (3.0 * a - 2.0 * d - r) / a
    e1_coords = PhasePoint(1.0, tau_bar1)
    violated1 = None
    if not 2.0 * a < 2.0 * d + r:
        violated1 = "2*alpha < 2*delta + rho"
    elif not 2.0 * d + r < 3.0 * a:
        violated1 = "2*delta + rho < 3*alpha"
    if violated1 is None:
        e1 = _finished_report("E1", PREVENTION, e1_coords, e1_coords, params)
    else:
        e1 = EquilibriumReport(name="E1", system=PREVENTION, coords=e1_coords,
                               coords_tau=e1_coords, exists=False,
                               violated=violated1)

    root = math.sqrt(r * r + 8.0 * a * d)
    s_bar2 = (root + r) / (4.0 * a)  # equal to 2d/(root - r), stable at d=0
    tau_bar2 = (2.0 * a - (root - r)) / (2.0 * a)
    e2_coords = PhasePoint(s_bar2, tau_bar2)
    violated2 = None
    if not 2.0 * d / (a + r) < 1.0:
        violated2 = "2*delta/(alpha + rho) < 1"
    elif not (d + r) / (2.0 * a) < 1.0:
        violated2 = "(delta + rho)/(2*alpha) < 1"
    if violated2 is None:
        e2 = _finished_report("E2", PREVENTION, e2_coords, e2_coords, params)
    else:
        e2 = EquilibriumReport(name="E2", system=PREVENTION, coords=e2_coords,
                               coords_tau=e2_coords, exists=False,
                               violated=violated2)
    return e1, e2


def treatment_equilibria(params: ModelParams):
    """Reports for the treatment equilibria E1 and E2.

    E1 = (1, phi=0) always exists and maps to (1, tau=0).  E2 exists for
    alpha > rho; its report also carries tau_feasible, the condition
    1 > max{rho/alpha, 2*delta/alpha} under which the induced long-run
    tax lies strictly between 0 and 1.
    """
    a, d, r = params.alpha, params.delta, params.rho
    if a == 0.0:
        raise DomainError("treatment equilibria undefined for alpha = 0")
    if d == 0.0:
        raise DomainError("treatment equilibria undefined for delta = 0")

    e1_coords = PhasePoint(1.0, 0.0)
    e1 = _finished_report("E1", TREATMENT, e1_coords, e1_coords, params)

    s_bar2 = (r + a) / (2.0 * a)
    phi_bar2 = (a - r) * (a + r) / (4.0 * a * d)
    tau_bar2 = (a - r) * (a + r - 2.0 * d) / (2.0 * d * (r + a))
    coords = PhasePoint(s_bar2, phi_bar2)
    coords_tau = PhasePoint(s_bar2, tau_bar2)
    feasible = r / a < 1.0 and 2.0 * d / a < 1.0
    if a > r:
        e2 = _finished_report("E2", TREATMENT, coords, coords_tau, params,
                              tau_feasible=feasible)
    else:
        e2 = EquilibriumReport(name="E2", system=TREATMENT, coords=coords,
                               coords_tau=coords_tau, exists=False,
                               violated="alpha > rho", tau_feasible=feasible)
    return e1, e2

"""Baseline SIS dynamics under constant prevention and treatment rates.

The population is normalized to 1 and split into susceptibles S and
infecteds I with S + I = 1.  A constant prevention rate p scales the
infection rate down to alpha*(1-p); a constant treatment rate v scales
the recovery rate up to delta*(1+v).  Everything an analysis needs about
this model is closed-form: the reproduction number, both equilibria, the
full time path (a Bernoulli/logistic equation), and the long-run
classification.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

DISEASE_FREE = "disease-free"
ENDEMIC = "endemic"

#: |R0 - 1| below this uses the degenerate-rate branch of the closed form
#: (the generic branch has a 0/0 structure at R0 = 1).
R0_BRANCH_TOL = 1e-9


@dataclass(frozen=True)
class ModelParams:
    """Disease and economic constants.

    alpha: infection rate per unit time (>= 0)
    delta: recovery rate per unit time (>= 0)
    rho:   time-preference discount rate (> 0)
    p:     constant prevention rate in [0, 1]
    v:     constant treatment rate in [0, 1]

    The total population is identically 1 and is not stored.
    """

    alpha: float
    delta: float
    rho: float
    p: float = 0.0
    v: float = 0.0

    def __post_init__(self):
        if self.alpha < 0:
            raise DomainError(f"alpha must be >= 0, got {self.alpha}")
        if self.delta < 0:
            raise DomainError(f"delta must be >= 0, got {self.delta}")
        if self.rho <= 0:
            raise DomainError(f"rho must be > 0, got {self.rho}")
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"p must be in [0, 1], got {self.p}")
        if not 0.0 <= self.v <= 1.0:
            raise DomainError(f"v must be in [0, 1], got {self.v}")

    @property
    def alpha_eff(self) -> float:
        """Effective infection rate alpha*(1-p)."""
        return self.alpha * (1.0 - self.p)

    @property
    def delta_eff(self) -> float:
        """Effective recovery rate delta*(1+v)."""
        return self.delta * (1.0 + self.v)


@dataclass(frozen=True)
class SisState:
    """A point (S, I) on the unit simplex; conservation enforced to 1e-10."""

    s: float
    i: float

    def __post_init__(self):
        if not 0.0 <= self.s <= 1.0:
            raise DomainError(f"s must be in [0, 1], got {self.s}")
        if not 0.0 <= self.i <= 1.0:
            raise DomainError(f"i must be in [0, 1], got {self.i}")
        if abs(self.s + self.i - 1.0) > 1e-10:
            raise DomainError(f"s + i must equal 1, got {self.s + self.i}")


def basic_reproduction_number(params: ModelParams) -> float:
    """Average number of secondary infections per infectious individual,
    alpha*(1-p) / (delta*(1+v)).

    Raises ZeroDivisionError when the effective recovery rate is zero
    (delta = 0), where the ratio is undefined.
    """
    if params.delta_eff == 0.0:
        raise ZeroDivisionError(
            "basic reproduction number undefined: effective recovery rate "
            "delta*(1+v) is zero")
    return params.alpha_eff / params.delta_eff


def sis_vector_field(i: float, params: ModelParams) -> float:
    """di/dt = alpha(1-p)(1-i)i - delta(1+v)i.

    The susceptible derivative is the exact negation.  Raises DomainError
    for i outside [0, 1].
    """
    if not 0.0 <= i <= 1.0:
        raise DomainError(f"infected share must be in [0, 1], got {i}")
    return params.alpha_eff * (1.0 - i) * i - params.delta_eff * i


def baseline_planar_field(params: ModelParams):
    """The (S, I) form of the baseline dynamics as an integrand callable
    f(t, (s, i)) -> (ds, di), with ds computed as the exact negation of
    di so numerical paths conserve S + I to rounding."""
    a, d = params.alpha_eff, params.delta_eff

    def field(t, y):
        s, i = y
        di = a * s * i - d * i
        return -di, di

    return field


def baseline_equilibria(params: ModelParams) -> tuple[float, float | None]:
    """(disease-free level 0, endemic level 1 - 1/R0 or None).

    The endemic level exists only for R0 > 1; at R0 <= 1 the second
    element is None.
    """
    r0 = basic_reproduction_number(params)
    if r0 > 1.0:
        return 0.0, 1.0 - 1.0 / r0
    return 0.0, None


def closed_form_infected(t, i0: float, params: ModelParams):
    """Explicit solution I_t of the baseline equation, vectorized over t.

    With a = alpha*(1-p), d = delta*(1+v) and r = a - d the equation is
    logistic and solves to

        I_t = e^{rt} / [ (a/r)(e^{rt} - 1) + 1/I0 ]      (R0 != 1)
        I_t = 1 / (a t + 1/I0)                           (R0 = 1)

    The R0 = 1 branch is selected for |R0 - 1| < R0_BRANCH_TOL; the two
    branches agree continuously across the switch.  i0 = 0 is a valid
    absorbing input (returns the zero path); i0 < 0 is a domain error.
    Note the growth rate uses the *effective* infection rate a, not the
    raw alpha.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("time must be nonnegative")
    if i0 < 0:
        raise DomainError(f"initial infected share must be >= 0, got {i0}")
    if i0 > 1:
        raise DomainError(f"initial infected share must be <= 1, got {i0}")
    if i0 == 0.0:
        return np.zeros_like(t) if t.ndim else 0.0

    a = params.alpha_eff
    r0 = basic_reproduction_number(params)
    if abs(r0 - 1.0) < R0_BRANCH_TOL:
        out = 1.0 / (a * t + 1.0 / i0)
        return out if t.ndim else float(out)

    r = a - params.delta_eff
    inv_k = a / r  # 1/(1 - 1/R0); stays finite as a -> 0
    if r >= 0.0:
        # divide through by e^{rt} so large rt cannot overflow
        e = np.exp(-r * t)
        out = 1.0 / (inv_k * (1.0 - e) + e / i0)
    else:
        e = np.exp(r * t)
        out = e / (inv_k * (e - 1.0) + 1.0 / i0)
    return out if t.ndim else float(out)


def classify_long_run(params: ModelParams) -> str:
    """DISEASE_FREE for R0 <= 1 (boundary included), ENDEMIC otherwise.

    For R0 > 1 the endemic level is approached from any i0 > 0; i0 = 0 is
    absorbing and stays disease-free regardless of R0.
    """
    return DISEASE_FREE if basic_reproduction_number(params) <= 1.0 else ENDEMIC

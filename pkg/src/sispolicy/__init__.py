"""SIS epidemic dynamics under optimal prevention and treatment taxation.

A numpy/numba library covering the full analysis chain: baseline SIS
simulation and closed-form solution, the two first-order-condition
planar systems with equilibrium and stability reports, Runge-Kutta
integration with event detection, saddle-path shooting for the optimal
initial tax, discounted social-cost quadrature, and the
prevention-vs-treatment comparison table.
"""

from .control_systems import (NON_HYPERBOLIC, PREVENTION, SADDLE, STABLE,
                              TREATMENT, UNSTABLE, EquilibriumReport,
                              PhasePoint, classify_jacobian, jacobian,
                              phi_from_tau, prevention_equilibria,
                              prevention_field, prevention_rhs, tau_from_phi,
                              treatment_equilibria, treatment_field,
                              treatment_rhs)
from .costs import (BENCHMARK_ROWS, PREVENTION_DOMINATES, TIE, TIE_THRESHOLD,
                    TREATMENT_DOMINATES, ComparisonRow, PolicyOutcome,
                    compare, constant_policy_cost, delta_grid,
                    social_cost_prevention, social_cost_treatment)
from .epidemic import (DISEASE_FREE, ENDEMIC, ModelParams, SisState,
                       baseline_equilibria, baseline_planar_field,
                       basic_reproduction_number, classify_long_run,
                       closed_form_infected, sis_vector_field)
from .errors import (BracketError, DomainBreach, DomainError, InfeasibleError,
                     KindMismatchError, NonHyperbolicError, SingularityError,
                     StiffnessError, StructureError)
from .integrator import (EVENT, REACHED_TMAX, Event, IntegrationOptions,
                         Termination, Trajectory, integrate)
from .shooting import (ShootingResult, manifold_control_at, shoot_prevention,
                       shoot_treatment, stable_manifold_backward)

__version__ = "0.1.0"

__all__ = [
    "BENCHMARK_ROWS", "BracketError", "ComparisonRow", "DISEASE_FREE",
    "DomainBreach", "DomainError", "ENDEMIC", "EVENT", "EquilibriumReport",
    "Event", "InfeasibleError", "IntegrationOptions", "KindMismatchError",
    "ModelParams", "NON_HYPERBOLIC", "NonHyperbolicError", "PREVENTION",
    "PREVENTION_DOMINATES", "PhasePoint", "PolicyOutcome", "REACHED_TMAX",
    "SADDLE", "STABLE", "ShootingResult", "SingularityError", "SisState",
    "StiffnessError", "StructureError", "TIE", "TIE_THRESHOLD", "TREATMENT",
    "TREATMENT_DOMINATES", "Termination", "Trajectory", "UNSTABLE",
    "baseline_equilibria", "baseline_planar_field",
    "basic_reproduction_number", "classify_jacobian", "classify_long_run",
    "closed_form_infected", "compare", "constant_policy_cost", "delta_grid",
    "integrate", "jacobian", "manifold_control_at", "phi_from_tau",
    "prevention_equilibria", "prevention_field", "prevention_rhs",
    "shoot_prevention", "shoot_treatment", "sis_vector_field",
    "social_cost_prevention", "social_cost_treatment",
    "stable_manifold_backward", "tau_from_phi", "treatment_equilibria",
    "treatment_field", "treatment_rhs",
]

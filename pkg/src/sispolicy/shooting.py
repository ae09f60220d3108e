"""Saddle-path shooting for the optimal policy paths.

Each policy problem has a unique initial control value (tau0 for
prevention, phi0 for treatment) whose forward orbit converges to the
disease-free saddle E1; every other initial value eventually peels off
the stable manifold.  The first irreversible symptom of peeling is used
to classify a guess:

* TooLow  - dS/dt turns negative (susceptibles fall back);
* TooHigh - prevention: tau escapes above tau_bar1 while s is still
  short of 1; treatment: s crosses 1 with treatment pressure left over;
* Converged - entry into the (eps_conv, eps_conv) ball around E1.

Bisection on the initial control drives the bracket below 1e-10.  An
independent cross-check traces the stable manifold backward in time from
an eigenvector seed at E1; the shot initial value must lie on that curve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .control_systems import (PREVENTION, SADDLE, TREATMENT, EquilibriumReport,
                              PhasePoint, prevention_equilibria,
                              prevention_field, tau_from_phi,
                              treatment_equilibria, treatment_field)
from .epidemic import ModelParams
from .errors import BracketError, DomainError, StructureError
from .integrator import (EVENT, REACHED_TMAX, Event, IntegrationOptions,
                         Termination, Trajectory, integrate)

CONVERGED = "converged"
TOO_HIGH = "too_high"
TOO_LOW = "too_low"

_VERDICT_NAMES = {_kernels.CONVERGED: CONVERGED,
                  _kernels.TOO_HIGH: TOO_HIGH,
                  _kernels.TOO_LOW: TOO_LOW}

#: convergence ball radius around E1
EPS_CONV = 1e-6
#: overshoot margin above the long-run tax
EPS_OVERSHOOT = 1e-4
#: distance of the manifold seed from E1 along the stable eigenvector
EPS_SEED = 1e-7
#: bisection runs until the bracket midpoint is no longer representable
#: (machine-tight) or the width drops below this; 0 means machine-tight.
#: Either way the final width is far below the guaranteed 1e-10 bound.
BRACKET_TOL = 0.0

#: how far from E1 the returned trajectory may end before the shot is
#: considered structurally broken (float64 cannot do better than ~1e-5
#: here: a tau0 bracket of width w reaches E1 no closer than w amplified
#: by exp(theta_unstable/|theta_stable| * log((1-s0)/eps)))
_PROXIMITY_GUARD = 1e-2


@dataclass(frozen=True)
class ShootingResult:
    """Outcome of a saddle-path shot.

    tau0 is the optimal initial tax rate; c0 the optimal initial control
    coordinate in the system's native coordinates (equals tau0 for
    prevention, phi0 for treatment).  The trajectory runs along the
    stable manifold and is truncated at its closest approach to the
    target equilibrium.  classifier_log records every bisection guess
    with its verdict.
    """

    tau0: float
    c0: float
    trajectory: Trajectory
    target: EquilibriumReport
    bracket_width: float
    classifier_log: list

    @property
    def converged_distance(self) -> float:
        """Sup-norm distance of the trajectory's final point from E1."""
        fs, fc = self.trajectory.states[-1]
        es, ec = self.target.coords.as_tuple()
        return max(abs(fs - es), abs(fc - ec))


def _require_saddle(report: EquilibriumReport, what: str) -> EquilibriumReport:
    if not report.exists:
        raise StructureError(
            f"{what} does not exist (violated: {report.violated})")
    if report.classification != SADDLE:
        raise StructureError(
            f"{what} is not a saddle (classified {report.classification})")
    return report


def _constant_trajectory(point: PhasePoint, t_max: float, kind: str) -> Trajectory:
    times = np.array([0.0, t_max])
    states = np.array([point.as_tuple(), point.as_tuple()])
    return Trajectory(times=times, states=states,
                      termination=Termination(REACHED_TMAX, None, t_max),
                      policy_kind=kind)


def _truncate_at_closest(ts, ss, cs, n, target, kind, eps_conv) -> Trajectory:
    ts, ss, cs = ts[:n], ss[:n], cs[:n]
    es, ec = target
    dist = np.maximum(np.abs(ss - es), np.abs(cs - ec))
    k = int(np.argmin(dist))
    times = ts[:k + 1]
    states = np.column_stack([ss[:k + 1], cs[:k + 1]])
    if dist[k] < eps_conv:
        term = Termination(EVENT, "converged", float(times[-1]))
    else:
        term = Termination(EVENT, "closest_approach", float(times[-1]))
    return Trajectory(times=times, states=states, termination=term,
                      policy_kind=kind)


def _classify_prev_generic(params, s0, tau0, tau_bar, opts, eps_conv, eps_ov):
    """Classification through the generic integrator (used for rk45)."""
    field = prevention_field(params)

    def ball(t, y):
        return max(abs(y[0] - 1.0), abs(y[1] - tau_bar)) - eps_conv

    def ds(t, y):
        return field(t, y)[0]

    def overshoot(t, y):
        if y[0] >= 1.0 - eps_conv:
            return -1.0
        return y[1] - (tau_bar + eps_ov)

    def blowup(t, y):
        return y[1] - (tau_bar + 0.5)

    events = (Event("ball", ball, -1), Event("ds", ds, -1),
              Event("overshoot", overshoot, +1), Event("blowup", blowup, +1))
    run = IntegrationOptions(step=opts.step, method=opts.method,
                             abs_tol=opts.abs_tol, rel_tol=opts.rel_tol,
                             t_max=opts.t_max, events=events)
    traj = integrate(field, PhasePoint(s0, tau0), run, PREVENTION)
    if traj.termination.reason == EVENT:
        name = traj.termination.event
        if name == "ball":
            return _kernels.CONVERGED
        if name == "ds":
            return _kernels.TOO_LOW
        return _kernels.TOO_HIGH
    s_end, c_end = traj.states[-1]
    if s_end < 1.0 - eps_conv:
        return _kernels.TOO_LOW
    return _kernels.TOO_LOW if c_end <= tau_bar else _kernels.TOO_HIGH


def _classify_treat_generic(params, s0, phi0, opts, eps_conv):
    field = treatment_field(params)

    def ball(t, y):
        return max(abs(y[0] - 1.0), y[1]) - eps_conv

    def ds(t, y):
        return field(t, y)[0]

    def crossed(t, y):
        return y[0] - 1.0

    events = (Event("ball", ball, -1), Event("ds", ds, -1),
              Event("crossed", crossed, +1))
    run = IntegrationOptions(step=opts.step, method=opts.method,
                             abs_tol=opts.abs_tol, rel_tol=opts.rel_tol,
                             t_max=opts.t_max, events=events)
    traj = integrate(field, PhasePoint(s0, phi0), run, TREATMENT)
    if traj.termination.reason == EVENT:
        name = traj.termination.event
        if name == "ball":
            return _kernels.CONVERGED
        if name == "ds":
            return _kernels.TOO_LOW
        return _kernels.TOO_HIGH
    return _kernels.TOO_LOW


def _bisect(classify, lo, hi, bracket_tol, log):
    """Bisect the TooLow->TooHigh transition; returns (tau_or_phi, width).

    Converged verdicts (hit only in degenerate cases, the ball being
    smaller than float64 saddle amplification allows) group with TooLow,
    so the returned value is the TooHigh-side endpoint: deterministic and
    guaranteed to approach the target from the monotone side.
    """
    v_lo = classify(lo)
    log.append((lo, _VERDICT_NAMES[v_lo]))
    if v_lo == _kernels.TOO_HIGH:
        raise BracketError(
            f"lower bracket end {lo:.6g} already classifies TooHigh")
    v_hi = classify(hi)
    log.append((hi, _VERDICT_NAMES[v_hi]))
    if v_hi != _kernels.TOO_HIGH:
        raise BracketError(
            f"upper bracket end {hi:.6g} classifies {_VERDICT_NAMES[v_hi]}, "
            "expected TooHigh")
    while hi - lo > bracket_tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # bracket is machine-tight
        v = classify(mid)
        log.append((mid, _VERDICT_NAMES[v]))
        if v == _kernels.TOO_HIGH:
            hi = mid
        else:
            lo = mid
    return hi, hi - lo


def shoot_prevention(params: ModelParams, s0: float,
                     opts: IntegrationOptions | None = None, *,
                     eps_conv: float = EPS_CONV,
                     eps_overshoot: float = EPS_OVERSHOOT,
                     bracket_tol: float = BRACKET_TOL) -> ShootingResult:
    """Find tau0 such that the prevention orbit from (s0, tau0) runs along
    the stable manifold into E1 = (1, tau_bar1).

    Bisection over tau0 in [0, tau_bar1].  Raises StructureError when E1
    is absent or not a saddle, BracketError when the endpoints do not
    bracket the manifold (e.g. the manifold's tau0 at s0 is negative).
    """
    if not 0.0 < s0 <= 1.0:
        raise DomainError(f"s0 must be in (0, 1], got {s0}")
    opts = opts or IntegrationOptions()
    target = _require_saddle(prevention_equilibria(params)[0], "prevention E1")
    tau_bar = target.coords.c

    if s0 == 1.0:
        traj = _constant_trajectory(target.coords, opts.t_max, PREVENTION)
        return ShootingResult(tau0=tau_bar, c0=tau_bar, trajectory=traj,
                              target=target, bracket_width=0.0,
                              classifier_log=[(tau_bar, CONVERGED)])

    a, d, r = params.alpha, params.delta, params.rho
    if opts.method == "rk4":
        def classify(guess):
            return _kernels.classify_prevention(
                a, d, r, s0, guess, tau_bar, opts.step, opts.t_max,
                eps_conv, eps_overshoot)
    else:
        def classify(guess):
            return _classify_prev_generic(params, s0, guess, tau_bar, opts,
                                          eps_conv, eps_overshoot)

    log: list = []
    tau0, width = _bisect(classify, 0.0, tau_bar, bracket_tol, log)

    ts, ss, cs, n, _stop = _kernels.path_prevention(
        a, d, r, s0, tau0, tau_bar, opts.step, opts.t_max,
        eps_conv, eps_overshoot)
    traj = _truncate_at_closest(ts, ss, cs, n, (1.0, tau_bar),
                                PREVENTION, eps_conv)
    if np.any(traj.c > 1.0 + 1e-9):
        raise StructureError("shot prevention path exceeds tau = 1")
    result = ShootingResult(tau0=tau0, c0=tau0, trajectory=traj,
                            target=target, bracket_width=width,
                            classifier_log=log)
    if result.converged_distance > _PROXIMITY_GUARD:
        raise StructureError(
            f"shot path ends {result.converged_distance:.3g} from E1")
    return result


def shoot_treatment(params: ModelParams, s0: float,
                    opts: IntegrationOptions | None = None, *,
                    eps_conv: float = EPS_CONV,
                    bracket_tol: float = BRACKET_TOL) -> ShootingResult:
    """Find phi0 (and the induced tau0) such that the treatment orbit from
    (s0, phi0) converges to E1 = (1, 0).

    Bisection over phi0 in [1-s0, 1]: the lower end is the tau = 0 image
    of s0 under phi = 1 - s + tau*s (no intervention; a negative tax is
    inadmissible) and the upper end the tau = 1 image.
    """
    if not 0.0 < s0 <= 1.0:
        raise DomainError(f"s0 must be in (0, 1], got {s0}")
    opts = opts or IntegrationOptions()
    target = _require_saddle(treatment_equilibria(params)[0], "treatment E1")

    if s0 == 1.0:
        traj = _constant_trajectory(target.coords, opts.t_max, TREATMENT)
        return ShootingResult(tau0=0.0, c0=0.0, trajectory=traj,
                              target=target, bracket_width=0.0,
                              classifier_log=[(0.0, CONVERGED)])

    a, d, r = params.alpha, params.delta, params.rho
    if opts.method == "rk4":
        def classify(guess):
            return _kernels.classify_treatment(
                a, d, r, s0, guess, opts.step, opts.t_max, eps_conv)
    else:
        def classify(guess):
            return _classify_treat_generic(params, s0, guess, opts, eps_conv)

    log: list = []
    phi0, width = _bisect(classify, 1.0 - s0, 1.0, bracket_tol, log)

    ts, ss, cs, n, _stop = _kernels.path_treatment(
        a, d, r, s0, phi0, opts.step, opts.t_max, eps_conv)
    traj = _truncate_at_closest(ts, ss, cs, n, (1.0, 0.0), TREATMENT, eps_conv)
    result = ShootingResult(tau0=tau_from_phi(s0, phi0), c0=phi0,
                            trajectory=traj, target=target,
                            bracket_width=width, classifier_log=log)
    if result.converged_distance > _PROXIMITY_GUARD:
        raise StructureError(
            f"shot path ends {result.converged_distance:.3g} from E1")
    return result


def stable_manifold_backward(params: ModelParams, policy: str,
                             arc_length: float = 2.0, *,
                             eps_seed: float = EPS_SEED,
                             opts: IntegrationOptions | None = None) -> Trajectory:
    """Trace the stable manifold of E1 by reversed-time integration from
    E1 - eps_seed * (stable eigenvector).

    Returns a trajectory whose times are reversed-time (time into the
    past, increasing), stopping once the traced arc length exceeds
    arc_length or the path leaves the feasible strip.  Serves as an
    independent cross-check of shooting: the shot initial control must
    lie on this curve.
    """
    opts = opts or IntegrationOptions()
    if policy == PREVENTION:
        target = _require_saddle(prevention_equilibria(params)[0],
                                 "prevention E1")
        is_prev = True
    elif policy == TREATMENT:
        target = _require_saddle(treatment_equilibria(params)[0],
                                 "treatment E1")
        is_prev = False
    else:
        raise ValueError(f"unknown policy {policy!r}")

    vec = target.stable_eigenvector
    es, ec = target.coords.as_tuple()
    ts, ss, cs, n = _kernels.manifold_backward(
        is_prev, params.alpha, params.delta, params.rho, es, ec,
        float(vec[0]), float(vec[1]), eps_seed, opts.step, opts.t_max,
        arc_length)
    states = np.column_stack([ss[:n], cs[:n]])
    return Trajectory(times=ts[:n], states=states,
                      termination=Termination(EVENT, "manifold_traced",
                                              float(ts[n - 1])),
                      policy_kind=policy)


def manifold_control_at(manifold: Trajectory, s: float) -> float:
    """Interpolate the manifold's control coordinate at susceptible share
    s (linear interpolation in s, which is monotone along the branch)."""
    ss = manifold.s[::-1]
    cs = manifold.c[::-1]
    if not ss[0] <= s <= ss[-1]:
        raise DomainError(
            f"s = {s} outside the traced manifold range [{ss[0]:.6g}, "
            f"{ss[-1]:.6g}]; increase arc_length")
    return float(np.interp(s, ss, cs))

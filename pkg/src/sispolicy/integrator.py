"""Explicit Runge-Kutta integration of planar systems with event detection.

Two methods: classic fixed-step RK4 (the default; deterministic sampling
is what makes cost figures reproducible to the digit) and an adaptive
Dormand-Prince 5(4) pair.  Dense output is simply every accepted step.
Events are scalar functions of (t, state) whose declared-direction zero
crossings terminate integration; crossing times are refined by bisection
on the step to 1e-10.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .control_systems import PhasePoint
from .errors import DomainBreach, DomainError, StiffnessError

REACHED_TMAX = "tmax"
EVENT = "event"
BREACH = "breach"

_EVENT_TIME_TOL = 1e-10
_MIN_STEP_FACTOR = 1e-14

# Dormand-Prince 5(4) tableau
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
          187 / 2100, 1 / 40)


@dataclass(frozen=True)
class Event:
    """A termination event: fn(t, (s, c)) crosses zero in the declared
    direction (+1 negative-to-positive, -1 positive-to-negative, 0 any)."""

    name: str
    fn: object
    direction: int = 0


@dataclass(frozen=True)
class Termination:
    reason: str  # REACHED_TMAX | EVENT | BREACH
    event: str | None = None
    time: float = 0.0


@dataclass(frozen=True)
class IntegrationOptions:
    step: float = 0.01
    method: str = "rk4"  # "rk4" (fixed) | "rk45" (adaptive)
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    t_max: float = 400.0
    events: tuple = field(default=())

    def __post_init__(self):
        if self.step <= 0:
            raise DomainError(f"step must be > 0, got {self.step}")
        if self.t_max <= 0:
            raise DomainError(f"t_max must be > 0, got {self.t_max}")
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise DomainError("tolerances must be > 0")
        if self.method not in ("rk4", "rk45"):
            raise DomainError(f"method must be 'rk4' or 'rk45', got {self.method!r}")


@dataclass(frozen=True)
class Trajectory:
    """Densely sampled path of a planar system.

    times is strictly increasing with one row of states per sample;
    termination records what ended the integration.
    """

    times: np.ndarray
    states: np.ndarray  # shape (n, 2)
    termination: Termination
    policy_kind: str = "generic"

    def __len__(self):
        return len(self.times)

    @property
    def s(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def c(self) -> np.ndarray:
        return self.states[:, 1]

    def final_point(self) -> PhasePoint:
        return PhasePoint(float(self.states[-1, 0]), float(self.states[-1, 1]))


def _rk4_step(rhs, t, y, h):
    s, c = y
    k1s, k1c = rhs(t, y)
    k2s, k2c = rhs(t + 0.5 * h, (s + 0.5 * h * k1s, c + 0.5 * h * k1c))
    k3s, k3c = rhs(t + 0.5 * h, (s + 0.5 * h * k2s, c + 0.5 * h * k2c))
    k4s, k4c = rhs(t + h, (s + h * k3s, c + h * k3c))
    return (s + h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s),
            c + h / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c))


def _crossed(direction, g_prev, g_new):
    if direction >= 0 and g_prev < 0.0 <= g_new:
        return True
    if direction <= 0 and g_prev > 0.0 >= g_new:
        return True
    return False


def _refine_event(rhs, event, t0, y0, h, g_prev):
    """Bisect the crossing time inside one accepted step using single RK4
    probe steps from (t0, y0); returns (t_event, y_event)."""
    lo, hi = 0.0, h
    while hi - lo > _EVENT_TIME_TOL:
        mid = 0.5 * (lo + hi)
        y_mid = _rk4_step(rhs, t0, y0, mid)
        if _crossed(event.direction, g_prev, event.fn(t0 + mid, y_mid)):
            hi = mid
        else:
            lo = mid
    y_ev = _rk4_step(rhs, t0, y0, hi)
    return t0 + hi, y_ev


def _finish(times, states, termination, policy_kind):
    return Trajectory(times=np.asarray(times), states=np.asarray(states),
                      termination=termination, policy_kind=policy_kind)


def integrate(rhs, x0: PhasePoint, opts: IntegrationOptions | None = None,
              policy_kind: str = "generic") -> Trajectory:
    """Integrate dy/dt = rhs(t, y) from x0 until t_max or the first event.

    rhs takes (t, (s, c)) and returns (ds, dc); a DomainError from it at
    t = 0 propagates (precondition violation), while one raised mid-run
    aborts with DomainBreach carrying the partial trajectory.  In
    adaptive mode a step-size underflow raises StiffnessError.
    """
    opts = opts or IntegrationOptions()
    t = 0.0
    y = x0.as_tuple()
    rhs(t, y)  # x0 must be inside the field's domain
    times = [0.0]
    states = [y]
    g_prev = [ev.fn(0.0, y) for ev in opts.events]

    adaptive = opts.method == "rk45"
    h = opts.step

    while t < opts.t_max - 1e-14:
        h_try = min(h, opts.t_max - t)
        try:
            if adaptive:
                y_new, err, h_next = _dp_step(rhs, t, y, h_try, opts)
                if err > 1.0:  # rejected: retry with the smaller step
                    h = h_next
                    if h < _MIN_STEP_FACTOR * max(1.0, abs(t)):
                        raise StiffnessError(
                            f"step size underflow at t = {t:.6g}")
                    continue
            else:
                y_new = _rk4_step(rhs, t, y, h_try)
                h_next = h
        except DomainError as exc:
            partial = _finish(times, states,
                              Termination(BREACH, None, t), policy_kind)
            raise DomainBreach(
                f"vector field domain violated at t = {t:.6g}: {exc}",
                trajectory=partial) from exc
        if not (np.isfinite(y_new[0]) and np.isfinite(y_new[1])):
            partial = _finish(times, states,
                              Termination(BREACH, None, t), policy_kind)
            raise DomainBreach(
                f"state became non-finite at t = {t:.6g}", trajectory=partial)

        t_new = t + h_try
        for i, ev in enumerate(opts.events):
            g_new = ev.fn(t_new, y_new)
            if _crossed(ev.direction, g_prev[i], g_new):
                t_ev, y_ev = _refine_event(rhs, ev, t, y, h_try, g_prev[i])
                times.append(t_ev)
                states.append(y_ev)
                return _finish(times, states,
                               Termination(EVENT, ev.name, t_ev), policy_kind)
            g_prev[i] = g_new

        t, y = t_new, y_new
        times.append(t)
        states.append(y)
        if adaptive:
            h = h_next
            if h < _MIN_STEP_FACTOR * max(1.0, abs(t)):
                raise StiffnessError(f"step size underflow at t = {t:.6g}")

    return _finish(times, states, Termination(REACHED_TMAX, None, t),
                   policy_kind)


def _dp_step(rhs, t, y, h, opts):
    """One Dormand-Prince 5(4) attempt; returns (y5, scaled_err, h_next)."""
    s, c = y
    ks = []
    for i in range(7):
        ss, cc = s, c
        for j, aij in enumerate(_DP_A[i]):
            ss += h * aij * ks[j][0]
            cc += h * aij * ks[j][1]
        ks.append(rhs(t + _DP_C[i] * h, (ss, cc)))
    y5s = s + h * sum(b * k[0] for b, k in zip(_DP_B5, ks))
    y5c = c + h * sum(b * k[1] for b, k in zip(_DP_B5, ks))
    y4s = s + h * sum(b * k[0] for b, k in zip(_DP_B4, ks))
    y4c = c + h * sum(b * k[1] for b, k in zip(_DP_B4, ks))
    sc_s = opts.abs_tol + opts.rel_tol * max(abs(s), abs(y5s))
    sc_c = opts.abs_tol + opts.rel_tol * max(abs(c), abs(y5c))
    err = np.sqrt(0.5 * (((y5s - y4s) / sc_s) ** 2 + ((y5c - y4c) / sc_c) ** 2))
    if err == 0.0:
        factor = 5.0
    else:
        factor = min(5.0, max(0.2, 0.9 * err ** -0.2))
    return (y5s, y5c), err, h * factor

"""Compiled scalar kernels for the planar systems and their hot loops.

Everything here is numba-jitted and free of Python objects: the shooting
bisection evaluates thousands of trajectory classifications, which is not
viable in interpreted loops.  The public modules wrap these kernels and
own all validation; kernels assume in-domain inputs except where a guard
is part of the loop logic (s <= 0, tau blow-up).
"""

import numpy as np
from numba import njit

# classifier verdicts
CONVERGED = 0
TOO_HIGH = 1
TOO_LOW = -1

# path stop reasons
STOP_TMAX = 0
STOP_BALL = 1
STOP_DS_NEGATIVE = 2
STOP_OVERSHOOT = 3
STOP_BREACH = 4


@njit(cache=True)
def prev_rhs(s, tau, alpha, delta, rho):
    """Prevention first-order-condition field in (S, tau); pole at S=0."""
    ds = delta * (1.0 - s) - alpha * (1.0 - tau) * s * (1.0 - s)
    dtau = (1.0 + tau) * (rho - 2.0 * alpha * s + delta
                          - alpha * (1.0 - tau) * s + delta / s)
    return ds, dtau


@njit(cache=True)
def treat_rhs(s, phi, alpha, delta, rho):
    """Treatment first-order-condition field in (S, phi); polynomial."""
    ds = delta * phi - alpha * s * (1.0 - s)
    dphi = phi * (rho + alpha * (1.0 - 2.0 * s))
    return ds, dphi


@njit(cache=True)
def sis_infected_rate(i, alpha_eff, delta_eff):
    """di/dt of the logistic SIS equation with effective rates."""
    return alpha_eff * (1.0 - i) * i - delta_eff * i


@njit(cache=True)
def _prev_step(s, c, h, alpha, delta, rho):
    k1s, k1c = prev_rhs(s, c, alpha, delta, rho)
    k2s, k2c = prev_rhs(s + 0.5 * h * k1s, c + 0.5 * h * k1c, alpha, delta, rho)
    k3s, k3c = prev_rhs(s + 0.5 * h * k2s, c + 0.5 * h * k2c, alpha, delta, rho)
    k4s, k4c = prev_rhs(s + h * k3s, c + h * k3c, alpha, delta, rho)
    return (s + h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s),
            c + h / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c))


@njit(cache=True)
def _treat_step(s, c, h, alpha, delta, rho):
    k1s, k1c = treat_rhs(s, c, alpha, delta, rho)
    k2s, k2c = treat_rhs(s + 0.5 * h * k1s, c + 0.5 * h * k1c, alpha, delta, rho)
    k3s, k3c = treat_rhs(s + 0.5 * h * k2s, c + 0.5 * h * k2c, alpha, delta, rho)
    k4s, k4c = treat_rhs(s + h * k3s, c + h * k3c, alpha, delta, rho)
    return (s + h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s),
            c + h / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c))


@njit(cache=True)
def classify_prevention(alpha, delta, rho, s0, tau0, tau_bar,
                        step, t_max, eps_conv, eps_ov):
    """Verdict for one shooting guess of the prevention system.

    Converged: inside the (eps_conv, eps_conv) ball around (1, tau_bar).
    TooHigh:   tau above tau_bar + eps_ov while s is still short of 1,
               or past the tau_bar + 0.5 blow-up guard.
    TooLow:    dS/dt turns negative (S falls back), or S hits 0.
    At t_max undecided: TooLow if s is short of 1, else by sign of
    tau - tau_bar.
    """
    s, c = s0, tau0
    n = int(t_max / step + 0.5)
    for _ in range(n):
        if abs(s - 1.0) < eps_conv and abs(c - tau_bar) < eps_conv:
            return CONVERGED
        if c > tau_bar + eps_ov and s < 1.0 - eps_conv:
            return TOO_HIGH
        if c > tau_bar + 0.5:
            return TOO_HIGH
        ds, _ = prev_rhs(s, c, alpha, delta, rho)
        if ds < 0.0:
            return TOO_LOW
        s, c = _prev_step(s, c, step, alpha, delta, rho)
        if s <= 0.0:
            return TOO_LOW
    if s < 1.0 - eps_conv:
        return TOO_LOW
    return TOO_LOW if c <= tau_bar else TOO_HIGH


@njit(cache=True)
def classify_treatment(alpha, delta, rho, s0, phi0, step, t_max, eps_conv):
    """Verdict for one shooting guess of the treatment system.

    Converged: inside the ball around (1, 0).  TooHigh: s crosses 1 with
    treatment pressure left over.  TooLow: dS/dt turns negative.
    """
    s, c = s0, phi0
    n = int(t_max / step + 0.5)
    for _ in range(n):
        if abs(s - 1.0) < eps_conv and c < eps_conv:
            return CONVERGED
        if s > 1.0:
            return TOO_HIGH
        ds, _ = treat_rhs(s, c, alpha, delta, rho)
        if ds < 0.0:
            return TOO_LOW
        s, c = _treat_step(s, c, step, alpha, delta, rho)
    return TOO_LOW


@njit(cache=True)
def path_prevention(alpha, delta, rho, s0, tau0, tau_bar,
                    step, t_max, eps_conv, eps_ov):
    """Dense prevention trajectory from (s0, tau0) up to the first stop
    symptom.  Returns (times, s, tau, n_samples, stop_code)."""
    n = int(t_max / step + 0.5)
    ts = np.empty(n + 1)
    ss = np.empty(n + 1)
    cs = np.empty(n + 1)
    s, c = s0, tau0
    ts[0], ss[0], cs[0] = 0.0, s, c
    k = 0
    stop = STOP_TMAX
    for istep in range(n):
        if abs(s - 1.0) < eps_conv and abs(c - tau_bar) < eps_conv:
            stop = STOP_BALL
            break
        if c > tau_bar + eps_ov:
            stop = STOP_OVERSHOOT
            break
        ds, _ = prev_rhs(s, c, alpha, delta, rho)
        if ds < 0.0:
            stop = STOP_DS_NEGATIVE
            break
        s, c = _prev_step(s, c, step, alpha, delta, rho)
        if s <= 0.0:
            stop = STOP_BREACH
            break
        k += 1
        ts[k], ss[k], cs[k] = step * (istep + 1), s, c
    return ts, ss, cs, k + 1, stop


@njit(cache=True)
def path_treatment(alpha, delta, rho, s0, phi0, step, t_max, eps_conv):
    """Dense treatment trajectory; stops on the ball, s crossing 1, or
    dS/dt turning negative.  Returns (times, s, phi, n_samples, stop)."""
    n = int(t_max / step + 0.5)
    ts = np.empty(n + 1)
    ss = np.empty(n + 1)
    cs = np.empty(n + 1)
    s, c = s0, phi0
    ts[0], ss[0], cs[0] = 0.0, s, c
    k = 0
    stop = STOP_TMAX
    for istep in range(n):
        if abs(s - 1.0) < eps_conv and c < eps_conv:
            stop = STOP_BALL
            break
        if s > 1.0:
            stop = STOP_OVERSHOOT
            break
        ds, _ = treat_rhs(s, c, alpha, delta, rho)
        if ds < 0.0:
            stop = STOP_DS_NEGATIVE
            break
        s, c = _treat_step(s, c, step, alpha, delta, rho)
        k += 1
        ts[k], ss[k], cs[k] = step * (istep + 1), s, c
    return ts, ss, cs, k + 1, stop


@njit(cache=True)
def manifold_backward(is_prevention, alpha, delta, rho, s_eq, c_eq,
                      vs, vc, eps_seed, step, t_max, arc_max):
    """Trace the stable manifold by reversed-time integration from the
    seed E1 - eps_seed*(vs, vc).

    Stops once the traced arc length exceeds arc_max, the state leaves
    the feasible strip, or reversed time runs out.  Returns
    (times, s, c, n_samples).
    """
    n = int(t_max / step + 0.5)
    ts = np.empty(n + 1)
    ss = np.empty(n + 1)
    cs = np.empty(n + 1)
    s = s_eq - eps_seed * vs
    c = c_eq - eps_seed * vc
    ts[0], ss[0], cs[0] = 0.0, s, c
    k = 0
    arc = 0.0
    h = -step  # reversed time
    for istep in range(n):
        if is_prevention:
            s_new, c_new = _prev_step(s, c, h, alpha, delta, rho)
        else:
            s_new, c_new = _treat_step(s, c, h, alpha, delta, rho)
        if s_new <= 1e-3 or s_new > 1.0 + 1e-9:
            break
        if s_new >= s:
            break  # fold: past here the manifold is no longer a graph over s
        if is_prevention and c_new < -0.99:
            break
        arc += np.hypot(s_new - s, c_new - c)
        s, c = s_new, c_new
        k += 1
        ts[k], ss[k], cs[k] = step * (istep + 1), s, c
        if arc >= arc_max:
            break
    return ts, ss, cs, k + 1


@njit(cache=True)
def sis_planar_path(alpha_eff, delta_eff, s0, i0, step, t_max):
    """Baseline SIS in planar (S, I) form with constant effective rates.

    dS/dt is computed as the exact negation of dI/dt so that S + I is
    conserved to rounding.  Returns (times, s, i, n_samples).
    """
    n = int(t_max / step + 0.5)
    ts = np.empty(n + 1)
    ss = np.empty(n + 1)
    ii = np.empty(n + 1)
    s, i = s0, i0
    ts[0], ss[0], ii[0] = 0.0, s, i
    for istep in range(n):
        k1i = alpha_eff * s * i - delta_eff * i
        k1s = -k1i
        s1, i1 = s + 0.5 * step * k1s, i + 0.5 * step * k1i
        k2i = alpha_eff * s1 * i1 - delta_eff * i1
        k2s = -k2i
        s2, i2 = s + 0.5 * step * k2s, i + 0.5 * step * k2i
        k3i = alpha_eff * s2 * i2 - delta_eff * i2
        k3s = -k3i
        s3, i3 = s + step * k3s, i + step * k3i
        k4i = alpha_eff * s3 * i3 - delta_eff * i3
        k4s = -k4i
        s += step / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s)
        i += step / 6.0 * (k1i + 2.0 * k2i + 2.0 * k3i + k4i)
        ts[istep + 1], ss[istep + 1], ii[istep + 1] = step * (istep + 1), s, i
    return ts, ss, ii, n + 1


@njit(cache=True)
def const_treatment_path(alpha, delta, rho, i0, tau_const, step, t_max):
    """Infected path under a constant tax funding treatment only.

    The balanced budget maps the tax to v_t = tau*(1-I_t)/I_t, so
    di/dt = alpha(1-i)i - delta*i - delta*tau*(1-i).  Returns
    (times, i, n_samples, feasible) where feasible is False as soon as
    v_t > 1 (i.e. tau*(1-i) > i) at any sample.
    """
    n = int(t_max / step + 0.5)
    ts = np.empty(n + 1)
    ii = np.empty(n + 1)
    i = i0
    ts[0], ii[0] = 0.0, i
    k = 0
    for istep in range(n):
        if tau_const * (1.0 - i) > i:
            return ts, ii, k + 1, False
        k1 = alpha * (1.0 - i) * i - delta * i - delta * tau_const * (1.0 - i)
        i1 = i + 0.5 * step * k1
        k2 = alpha * (1.0 - i1) * i1 - delta * i1 - delta * tau_const * (1.0 - i1)
        i2 = i + 0.5 * step * k2
        k3 = alpha * (1.0 - i2) * i2 - delta * i2 - delta * tau_const * (1.0 - i2)
        i3 = i + step * k3
        k4 = alpha * (1.0 - i3) * i3 - delta * i3 - delta * tau_const * (1.0 - i3)
        i += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if i < 0.0:
            i = 0.0
        k += 1
        ts[k], ii[k] = step * (istep + 1), i
    if tau_const * (1.0 - i) > i:
        return ts, ii, k + 1, False
    return ts, ii, k + 1, True

"""Optimal policy paths found by saddle-path shooting.

For one parameterization, shoots both policy problems from S0 = 0.96 and
plots the resulting tax paths and epidemic paths.  The contrast is the
whole story: the optimal prevention tax starts high and climbs to a
permanent plateau, while the optimal treatment tax starts low and decays
to zero once the disease is gone.

Run:  python demos/03_optimal_policy_paths.py
Writes demos/output/optimal_paths.png
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from sispolicy import (ModelParams, shoot_prevention, shoot_treatment,
                       social_cost_prevention, social_cost_treatment)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

params = ModelParams(alpha=0.2, delta=0.2, rho=0.04)
s0 = 0.96

prev = shoot_prevention(params, s0)
treat = shoot_treatment(params, s0)
cost_prev = social_cost_prevention(prev.trajectory, params)
cost_treat = social_cost_treatment(treat.trajectory, params)

tau_bar = prev.target.coords.c
print(f"prevention: tau0 = {prev.tau0:.4f}, climbs to {tau_bar:.4f}; "
      f"social cost {cost_prev:.4f}")
print(f"treatment:  tau0 = {treat.tau0:.4f} (phi0 = {treat.c0:.4f}), "
      f"decays to 0; social cost {cost_treat:.4f}")
print(f"cheaper option here: "
      f"{'treatment' if cost_treat < cost_prev else 'prevention'}")

treat_tax = (treat.trajectory.c - 1.0 + treat.trajectory.s) / treat.trajectory.s

fig, (ax_tax, ax_epi) = plt.subplots(1, 2, figsize=(11, 4.2))

ax_tax.plot(prev.trajectory.times, prev.trajectory.c, lw=2,
            label=rf"prevention $\tau_t$ ($\tau_0$ = {prev.tau0:.4f})")
ax_tax.plot(treat.trajectory.times, treat_tax, lw=2,
            label=rf"treatment $\tau_t$ ($\tau_0$ = {treat.tau0:.4f})")
ax_tax.axhline(tau_bar, color="gray", ls=":", lw=1)
ax_tax.annotate(rf"$\bar\tau_1$ = {tau_bar:.2f}", (5, tau_bar + 0.015),
                fontsize=9, color="gray")
ax_tax.set_xlabel("time")
ax_tax.set_ylabel("tax rate")
ax_tax.set_title("optimal tax paths")
ax_tax.legend(fontsize=9)

ax_epi.plot(prev.trajectory.times, 1.0 - prev.trajectory.s, lw=2,
            label="infected share under prevention")
ax_epi.plot(treat.trajectory.times, 1.0 - treat.trajectory.s, lw=2,
            label="infected share under treatment")
ax_epi.set_xlabel("time")
ax_epi.set_ylabel("infected share")
ax_epi.set_title("epidemic paths (both eradicate)")
ax_epi.legend(fontsize=9)

fig.suptitle(r"$\alpha=\delta=0.2$, $\rho=0.04$, $S_0=0.96$", y=1.0)
fig.tight_layout()
fig.savefig(OUT / "optimal_paths.png", dpi=130)
print(f"wrote {OUT / 'optimal_paths.png'}")

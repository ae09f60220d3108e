"""Baseline SIS dynamics: the reproduction number decides everything.

Simulates the uncontrolled epidemic for a sub-threshold and a
super-threshold parameterization, overlays the closed-form solution on
the numerical one, and shows how constant prevention/treatment rates
move the reproduction number across the eradication threshold.

Run:  python demos/01_baseline_dynamics.py
Writes demos/output/baseline_dynamics.png
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from sispolicy import (IntegrationOptions, ModelParams, PhasePoint,
                       baseline_planar_field, basic_reproduction_number,
                       classify_long_run, closed_form_infected, integrate)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

scenarios = [
    ("fading out", ModelParams(alpha=0.2, delta=0.26, rho=0.04)),
    ("endemic", ModelParams(alpha=0.4, delta=0.2, rho=0.04)),
    ("endemic, tamed by prevention", ModelParams(alpha=0.4, delta=0.2,
                                                 rho=0.04, p=0.6)),
]

fig, axes = plt.subplots(1, 3, figsize=(13, 4), sharey=True)
for ax, (label, params) in zip(axes, scenarios):
    r0 = basic_reproduction_number(params)
    print(f"{label}: R0 = {r0:.3f} -> long run {classify_long_run(params)}")

    traj = integrate(baseline_planar_field(params), PhasePoint(0.96, 0.04),
                     IntegrationOptions(step=0.01, t_max=200.0), "baseline")
    oracle = closed_form_infected(traj.times, 0.04, params)
    print(f"  sup |numerical - closed form| = "
          f"{np.max(np.abs(traj.c - oracle)):.2e}")

    ax.plot(traj.times, traj.c, lw=2, label="infected (RK4)")
    ax.plot(traj.times, oracle, "--", lw=1.2, label="closed form")
    endemic = 1.0 - 1.0 / r0 if r0 > 1 else 0.0
    ax.axhline(endemic, color="gray", ls=":", lw=1,
               label=f"long-run level {endemic:.2f}")
    ax.set_title(f"{label}\n$R_0$ = {r0:.2f}")
    ax.set_xlabel("time")
    ax.legend(fontsize=8)
axes[0].set_ylabel("infected share")
fig.tight_layout()
fig.savefig(OUT / "baseline_dynamics.png", dpi=130)
print(f"wrote {OUT / 'baseline_dynamics.png'}")

"""Phase portraits of the two policy systems.

Draws the vector field, nullclines, equilibria, and the stable manifold
of the disease-free saddle for the prevention system (S, tau) and the
treatment system (S, phi).  The dashed stable manifold is the curve of
optimal starting points: given S0, the optimal initial tax is the height
of this curve at S0.

Run:  python demos/02_phase_portraits.py
Writes demos/output/phase_prevention.png and phase_treatment.png
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from sispolicy import (PREVENTION, TREATMENT, ModelParams,
                       prevention_equilibria, prevention_field,
                       stable_manifold_backward, treatment_equilibria,
                       treatment_field)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

params = ModelParams(alpha=0.2, delta=0.2, rho=0.04)
a, d, r = params.alpha, params.delta, params.rho


def quiver(ax, field, s_range, c_range, n=18):
    ss, cc = np.meshgrid(np.linspace(*s_range, n), np.linspace(*c_range, n))
    us = np.zeros_like(ss)
    vs = np.zeros_like(cc)
    for idx in np.ndindex(ss.shape):
        us[idx], vs[idx] = field(0.0, (ss[idx], cc[idx]))
    norm = np.hypot(us, vs)
    norm[norm == 0] = 1.0
    ax.quiver(ss, cc, us / norm, vs / norm, norm, cmap="Blues",
              scale=38, width=0.0035, alpha=0.75)


# --- prevention: (S, tau) ---------------------------------------------------

fig, ax = plt.subplots(figsize=(6.4, 5.2))
quiver(ax, prevention_field(params), (0.55, 1.0), (0.0, 1.0))

s = np.linspace(0.55, 1.0, 400)
ax.axvline(1.0, color="tab:green", lw=1.6, label=r"$\dot S = 0$ (boundary)")
ax.plot(s, 1.0 - d / (a * s), color="tab:green", ls="-.", lw=1.6,
        label=r"$\dot S = 0$ (interior)")
ax.plot(s, 3.0 - (r + d + d / s) / (a * s), color="tab:orange", lw=1.6,
        label=r"$\dot\tau = 0$")

e1, e2 = prevention_equilibria(params)
ax.plot(*e1.coords.as_tuple(), "k*", ms=14, label=f"$E_1$ ({e1.classification})")
if e2.exists:
    ax.plot(*e2.coords.as_tuple(), "ko", ms=8)

manifold = stable_manifold_backward(params, PREVENTION, arc_length=1.0)
ax.plot(manifold.s, manifold.c, "k--", lw=2, label="stable manifold")
tau_bar = e1.coords.c
print(f"prevention: long-run tax {tau_bar:.3f}; manifold reaches "
      f"s = {manifold.s[-1]:.3f}")

ax.set_xlim(0.55, 1.02)
ax.set_ylim(0.0, 1.0)
ax.set_xlabel("susceptible share $S$")
ax.set_ylabel(r"tax rate $\tau$")
ax.set_title(r"Prevention system, $\alpha=\delta=0.2$, $\rho=0.04$")
ax.legend(fontsize=8, loc="lower left")
fig.tight_layout()
fig.savefig(OUT / "phase_prevention.png", dpi=130)

# --- treatment: (S, phi) ----------------------------------------------------

fig, ax = plt.subplots(figsize=(6.4, 5.2))
quiver(ax, treatment_field(params), (0.0, 1.0), (0.0, 0.35))

s = np.linspace(0.0, 1.0, 400)
ax.plot(s, a * s * (1.0 - s) / d, color="tab:green", lw=1.6,
        label=r"$\dot S = 0$")
ax.axhline(0.0, color="tab:orange", lw=1.6, label=r"$\dot\varphi = 0$ (axis)")
ax.axvline((r + a) / (2 * a), color="tab:orange", ls="-.", lw=1.6,
           label=r"$\dot\varphi = 0$ (vertical)")

t1, t2 = treatment_equilibria(params)
ax.plot(*t1.coords.as_tuple(), "k*", ms=14, label=f"$E_1$ ({t1.classification})")
if t2.exists:
    ax.plot(*t2.coords.as_tuple(), "ko", ms=8,
            label=f"$E_2$ ({t2.classification})")

manifold = stable_manifold_backward(params, TREATMENT, arc_length=0.6)
ax.plot(manifold.s, manifold.c, "k--", lw=2, label="stable manifold")
print(f"treatment: interior equilibrium at {t2.coords.as_tuple()}")

ax.set_xlim(0.0, 1.05)
ax.set_ylim(-0.01, 0.35)
ax.set_xlabel("susceptible share $S$")
ax.set_ylabel(r"treatment pressure $\varphi = 1 - S + \tau S$")
ax.set_title(r"Treatment system, $\alpha=\delta=0.2$, $\rho=0.04$")
ax.legend(fontsize=8, loc="upper right")
fig.tight_layout()
fig.savefig(OUT / "phase_treatment.png", dpi=130)
print(f"wrote {OUT / 'phase_prevention.png'} and {OUT / 'phase_treatment.png'}")

"""Prevention vs treatment across the benchmark parameter sweep.

Solves both policy problems on all 15 (alpha, delta) benchmark rows and
prints the comparison table: initial tax, long-run tax, and discounted
social cost per policy, plus the dominance verdict.  The pattern that
emerges: prevention is the cheaper road to eradication when recovery is
slower than infection (delta < alpha), treatment wins otherwise.

Run:  python demos/04_policy_comparison.py
Writes demos/output/cost_comparison.png
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from sispolicy import BENCHMARK_ROWS, compare

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

rows = compare(BENCHMARK_ROWS, rho=0.04, s0=0.96)

header = (f"{'alpha':>5} {'delta':>5} | {'tau0':>7} {'taubar':>7} "
          f"{'cost':>9} | {'tau0':>7} {'cost':>9} | verdict")
print(" " * 15 + "prevention" + " " * 16 + "treatment")
print(header)
print("-" * len(header))
for row in rows:
    p, t = row.prevention, row.treatment
    print(f"{row.alpha:5.2f} {row.delta:5.3f} | {p.tau0:7.4f} "
          f"{p.tau_bar1:7.4f} {p.cost:9.6f} | {t.tau0:7.4f} "
          f"{t.cost:9.6f} | {row.verdict}")

labels = [f"{r.alpha}/{r.delta}" for r in rows]
x = np.arange(len(rows))
width = 0.38

fig, ax = plt.subplots(figsize=(12, 4.6))
ax.bar(x - width / 2, [r.prevention.cost for r in rows], width,
       label="prevention", color="tab:blue")
ax.bar(x + width / 2, [r.treatment.cost for r in rows], width,
       label="treatment", color="tab:red")
for xi, row in zip(x, rows):
    marker = {"prevention": "P", "treatment": "T", "tie": "="}[row.verdict]
    ax.annotate(marker, (xi, max(row.prevention.cost, row.treatment.cost)),
                ha="center", va="bottom", fontsize=9)
ax.set_xticks(x)
ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
ax.set_xlabel(r"$\alpha$ / $\delta$")
ax.set_ylabel("discounted social cost")
ax.set_title("cheaper eradication policy per parameter row "
             "(P = prevention, T = treatment, = tie)")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "cost_comparison.png", dpi=130)
print(f"\nwrote {OUT / 'cost_comparison.png'}")

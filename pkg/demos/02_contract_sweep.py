"""Sweep the deviation penalty and chart effort, error, and budget.

For each sensor count n, the penalty weight gamma is swept over a log grid
with the flat payment pinned to the participation floor (zero equilibrium
utility). The three panels show the classic trade-off: a stiffer penalty
buys more effort and a better estimate, at a growing budget. The final chart
plots estimation error against budget, where adding sensors shifts the whole
frontier down: for a fixed error target, a larger crowd is cheaper.

Writes sweep.csv, sweep_panels.png, and frontier.png into demos/output/.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from crowdcontract import (
    BestResponseObjective,
    ContractParams,
    EffortProfile,
    ExpCost,
    GameSpec,
    HyperbolicNoise,
    SensorProfile,
    estimator_mse,
    ir_delta_floor,
    solve_best_response,
    total_budget,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

profile = SensorProfile(alpha=1.0, cost=ExpCost(1.0, 1.0), noise=HyperbolicNoise(1.0))
n_values = (2, 5, 10, 50)
gammas = np.geomspace(0.1, 100.0, 60)

records = []
for n in n_values:
    for gamma in gammas:
        effort, diag = solve_best_response(
            BestResponseObjective(profile, float(gamma), n), tol=1e-12
        )
        efforts = EffortProfile((effort,) * n)
        bare = GameSpec.symmetric_game(n, profile, ContractParams(float(gamma), 0.0))
        delta = ir_delta_floor(bare, efforts, 0)
        spec = GameSpec.symmetric_game(n, profile, ContractParams(float(gamma), delta))
        records.append(
            dict(
                n=n,
                gamma=float(gamma),
                effort=effort,
                mse=estimator_mse(spec, efforts),
                budget=total_budget(spec, efforts).total_budget,
                boundary=diag.boundary_solution,
            )
        )

with open(OUT / "sweep.csv", "w") as fh:
    fh.write("n,gamma,effort,mse,budget,boundary\n")
    for r in records:
        fh.write(f"{r['n']},{r['gamma']:.17g},{r['effort']:.17g},"
                 f"{r['mse']:.17g},{r['budget']:.17g},{str(r['boundary']).lower()}\n")

fig, axes = plt.subplots(1, 3, figsize=(15, 4))
for n in n_values:
    rows = [r for r in records if r["n"] == n]
    g = [r["gamma"] for r in rows]
    axes[0].semilogx(g, [r["effort"] for r in rows], label=f"n={n}")
    axes[1].loglog(g, [r["mse"] for r in rows], label=f"n={n}")
    axes[2].loglog(g, [r["budget"] for r in rows], label=f"n={n}")
axes[0].set(xlabel="penalty weight gamma", ylabel="equilibrium effort")
axes[1].set(xlabel="penalty weight gamma", ylabel="estimator mse")
axes[2].set(xlabel="penalty weight gamma", ylabel="total budget")
for ax in axes:
    ax.legend()
    ax.grid(True, alpha=0.3)
fig.tight_layout()
fig.savefig(OUT / "sweep_panels.png", dpi=120)

fig2, ax = plt.subplots(figsize=(6, 4.5))
for n in n_values:
    rows = [r for r in records if r["n"] == n and not r["boundary"]]
    ax.loglog([r["budget"] for r in rows], [r["mse"] for r in rows], label=f"n={n}")
ax.set(xlabel="total budget", ylabel="estimator mse")
ax.legend()
ax.grid(True, alpha=0.3)
fig2.tight_layout()
fig2.savefig(OUT / "frontier.png", dpi=120)

# Spot-check the headline observation: at a common achievable error level,
# the required budget falls as the crowd grows.
probe = 0.05
print(f"budget needed for estimator mse <= {probe}:")
for n in n_values:
    rows = [r for r in records if r["n"] == n and r["mse"] <= probe]
    if rows:
        cheapest = min(rows, key=lambda r: r["budget"])
        print(f"  n={n:3d}: budget {cheapest['budget']:9.2f} "
              f"(gamma {cheapest['gamma']:.3f})")
    else:
        print(f"  n={n:3d}: not reached on this gamma grid")
print(f"\nwrote {OUT / 'sweep.csv'}, sweep_panels.png, frontier.png")

"""Design the cheapest contract that reaches a target estimation quality.

Working backwards from a per-sensor variance target epsilon: the target
pins the required effort noise^{-1}(epsilon), the first-order condition
pins the penalty weight that makes sensors choose exactly that effort, and
the participation constraint pins the flat payment. The resulting budget
equals the theoretical floor n * cost(noise^{-1}(epsilon)) / alpha, so no
individually rational contract reaching the target can be cheaper. The
budget-to-quality map inverts cleanly, giving the best quality any budget
can buy.
"""

import math

import numpy as np

from crowdcontract import (
    ContractParams,
    ExpCost,
    GameSpec,
    HyperbolicNoise,
    SensorProfile,
    build_report,
    design_optimal_contract,
    fundamental_budget,
    fundamental_performance,
    ir_delta_floor,
    solve_equilibrium,
)

profile = SensorProfile(alpha=1.0, cost=ExpCost(1.0, 1.0), noise=HyperbolicNoise(1.0))
n = 10
epsilon = 0.5  # per-sensor variance target; estimator mse target is epsilon/n

contract, predicted = design_optimal_contract(profile, n, epsilon)
print(f"target per-sensor variance: {epsilon}")
print(f"designed gamma: {contract.gamma:.6f}   (exact form: 400e/81 = "
      f"{400 * math.e / 81:.6f})")
print(f"designed delta: {contract.delta:.6f}   (exact form: 29e/9  = "
      f"{29 * math.e / 9:.6f})")

# Hand the designed contract to the sensors and confirm they behave as
# predicted.
spec = GameSpec.symmetric_game(n, profile, contract)
equilibrium, _ = solve_equilibrium(spec, tol=1e-12)
report = build_report(spec, equilibrium)
print(f"\nequilibrium effort:   {equilibrium.efforts[0]:.10f} "
      f"(target {profile.noise.inverse(epsilon):.10f})")
print(f"achieved variance:    {report.noise_variance:.10f}")
print(f"estimator mse:        {report.mse:.10f}")
print(f"per-sensor utility:   {report.utilities[0]:.2e}  (participation is tight)")
print(f"realized budget:      {report.total_budget:.10f}")
print(f"fundamental floor:    {fundamental_budget(profile, n, epsilon):.10f}")

# The floor really is a floor: floor-calibrated contracts that reach the
# target all cost at least as much.
rng = np.random.default_rng(2)
print("\nrandom floor-calibrated contracts reaching the target:")
for _ in range(5):
    gamma = float(10 ** rng.uniform(1.2, 2.5))
    bare = GameSpec.symmetric_game(n, profile, ContractParams(gamma, 0.0))
    efforts, _ = solve_equilibrium(bare, tol=1e-12)
    delta = ir_delta_floor(bare, efforts, 0)
    padded = GameSpec.symmetric_game(n, profile, ContractParams(gamma, delta))
    rep = build_report(padded, efforts)
    if rep.noise_variance <= epsilon:
        print(f"  gamma {gamma:8.3f}: variance {rep.noise_variance:.4f}, "
              f"budget {rep.total_budget:8.3f}  (floor {report.total_budget:.3f})")

# Inverting the question: what does a budget buy?
print("\nbudget -> best attainable per-sensor variance:")
for beta in (12.0, 20.0, 10 * math.e, 60.0):
    limit = fundamental_performance(profile, n, beta)
    print(f"  beta {beta:8.3f}: variance >= {limit:.6f}")
print("\nround trip: performance(budget(eps)) = "
      f"{fundamental_performance(profile, n, fundamental_budget(profile, n, epsilon)):.12f}")

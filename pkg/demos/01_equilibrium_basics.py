"""Solve a sensing-contract game and inspect the equilibrium.

A group of sensors measures a shared quantity; each one privately picks how
much effort to invest. Effort is costly (here cost(a) = exp(a)) but shrinks
the sensor's measurement variance (here noise(a) = 1/(1+a)). The planner
averages all reports and pays each sensor a flat amount minus a penalty
proportional to the squared distance between the sensor's report and the
average. This script builds that game, checks the solvability conditions,
and solves for the equilibrium efforts.
"""

import numpy as np

from crowdcontract import (
    BestResponseObjective,
    ContractParams,
    EffortProfile,
    ExpCost,
    GameSpec,
    HyperbolicNoise,
    SensorProfile,
    build_report,
    check_conditions,
    expected_utility,
    grid_oracle,
    solve_best_response,
    solve_equilibrium,
)

profile = SensorProfile(alpha=1.0, cost=ExpCost(scale=1.0, rate=1.0),
                        noise=HyperbolicNoise(scale=1.0))
contract = ContractParams(gamma=5.0, delta=4.64)
spec = GameSpec.symmetric_game(10, profile, contract)

# Each sensor minimizes penalty_weight * noise(a) + cost(a); the weight
# bundles alpha, gamma, and the share of the average the sensor controls.
objective = BestResponseObjective(profile, contract.gamma, spec.n)
print(f"penalty weight: {objective.penalty_weight:.4f}")
print(f"slope at zero effort: {objective.deriv1(0.0):.4f}  (< 0 means an "
      "interior equilibrium exists)")

diag = check_conditions(objective)
print(f"conditions: existence={diag.existence_ok} interior={diag.interior_ok} "
      f"strictly_convex={diag.strict_convexity_ok}")

# Solve the first-order condition, then cross-check with a brute-force grid
# search that knows nothing about derivatives.
effort, _ = solve_best_response(objective, tol=1e-12)
brute = grid_oracle(objective, a_max=5.0, points=100_000)
print(f"\nbest-response effort: {effort:.10f}")
print(f"grid-search check:    {brute:.10f}  (|diff| = {abs(effort - brute):.2e})")

# The full game just stacks the per-sensor solves: best responses never
# depend on the other sensors' efforts, so these are dominant strategies.
equilibrium, _ = solve_equilibrium(spec, tol=1e-12)
report = build_report(spec, equilibrium)
print(f"\nequilibrium efforts: all {equilibrium.efforts[0]:.6f}")
print(f"estimator mse:       {report.mse:.6f}  (= noise(a*)/n)")
print(f"per-sensor payment:  {report.payments[0]:.6f}")
print(f"per-sensor utility:  {report.utilities[0]:.6f}")
print(f"total budget:        {report.total_budget:.6f}")

# Dominant strategy in action: scramble everyone else's effort and watch the
# best response stay put.
rng = np.random.default_rng(1)
others = EffortProfile(tuple(rng.uniform(0, 3, size=10)))
grid = np.linspace(0, 2, 2001)
utilities = []
for a in grid:
    trial = list(others.efforts)
    trial[0] = a
    utilities.append(expected_utility(spec, EffortProfile(tuple(trial)), 0))
best = grid[int(np.argmax(utilities))]
print(f"\nargmax of sensor 0's utility with scrambled others: {best:.4f} "
      f"(equilibrium effort {effort:.4f})")

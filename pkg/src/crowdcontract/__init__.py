"""Contract design toolkit for effort-averse sensing games.

Computes contract equilibria under quadratic-deviation compensation, designs
budget-optimal contracts for a target estimation quality, and validates every
analytic quantity with a deterministic Monte-Carlo simulator.
"""

from .design import (
    BudgetReport,
    DesignError,
    DesignTarget,
    EquilibriumReport,
    build_report,
    design_optimal_contract,
    fundamental_budget,
    fundamental_performance,
    ir_delta_floor,
    total_budget,
)
from .equilibrium import (
    BestResponseObjective,
    EquilibriumDiagnostics,
    SolveError,
    check_conditions,
    equilibrium_sensitivity,
    grid_oracle,
    solve_best_response,
    solve_equilibrium,
)
from .families import (
    DomainError,
    ExpCost,
    ExpNoise,
    FunctionFamily,
    HyperbolicNoise,
    PowerCost,
    RangeError,
    inverse_by_bisection,
)
from .game import (
    ContractParams,
    EffortProfile,
    GameSpec,
    SensorProfile,
    estimator_mse,
    expected_payment,
    expected_utility,
)
from .simulation import (
    DeviationPoint,
    SimConfig,
    SimResult,
    deviation_scan,
    simulate,
)

__version__ = "0.1.0"

__all__ = [
    "BestResponseObjective",
    "BudgetReport",
    "ContractParams",
    "DesignError",
    "DesignTarget",
    "DeviationPoint",
    "DomainError",
    "EffortProfile",
    "EquilibriumDiagnostics",
    "EquilibriumReport",
    "ExpCost",
    "ExpNoise",
    "FunctionFamily",
    "GameSpec",
    "HyperbolicNoise",
    "PowerCost",
    "RangeError",
    "SensorProfile",
    "SimConfig",
    "SimResult",
    "SolveError",
    "build_report",
    "check_conditions",
    "design_optimal_contract",
    "deviation_scan",
    "equilibrium_sensitivity",
    "estimator_mse",
    "expected_payment",
    "expected_utility",
    "fundamental_budget",
    "fundamental_performance",
    "grid_oracle",
    "inverse_by_bisection",
    "ir_delta_floor",
    "simulate",
    "solve_best_response",
    "solve_equilibrium",
    "total_budget",
]

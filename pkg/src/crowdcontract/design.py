"""Contract calibration, budgets, and the budget / performance limits.

Two quality scales coexist and are kept explicit throughout:

* ``mse``: the averaging estimator's error (1/n^2) sum_i noise_i(a_i).
* ``noise_variance``: the per-sensor equilibrium variance noise(a*), which is
  n times the symmetric mse. Design targets (epsilon) and the fundamental
  budget/performance limits live on this scale: a target epsilon is met by
  driving the equilibrium effort to noise^{-1}(epsilon).
"""

from __future__ import annotations

from dataclasses import dataclass

from .equilibrium import (
    CONVEXITY_GRID,
    EquilibriumDiagnostics,
    _positive_on_grid,
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

__all__ = [
    "DesignError",
    "DesignTarget",
    "BudgetReport",
    "EquilibriumReport",
    "ir_delta_floor",
    "total_budget",
    "fundamental_budget",
    "fundamental_performance",
    "design_optimal_contract",
    "build_report",
]


class DesignError(RuntimeError):
    """Contract design preconditions failed (curvature condition violated)."""


@dataclass(frozen=True)
class DesignTarget:
    """Either a quality target epsilon or a budget cap beta, never both."""

    epsilon: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if (self.epsilon is None) == (self.beta is None):
            raise ValueError("set exactly one of epsilon or beta")
        if self.epsilon is not None and not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon!r}")
        if self.beta is not None and not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta!r}")


@dataclass(frozen=True)
class BudgetReport:
    """Total expected spend with its participation and fundamental floors.

    ``fundamental_floor`` is populated only for symmetric games with a stated
    quality target; asymmetric games get the budget and participation floor
    only.
    """

    total_budget: float
    per_sensor_payment: tuple[float, ...]
    ir_floor: float
    fundamental_floor: float | None = None


@dataclass(frozen=True)
class EquilibriumReport:
    """Solved (or predicted) game outcome in one flat record."""

    efforts: tuple[float, ...]
    mse: float
    noise_variance: float | None
    payments: tuple[float, ...]
    utilities: tuple[float, ...]
    total_budget: float
    boundary: tuple[bool, ...]


def ir_delta_floor(spec: GameSpec, equilibrium: EffortProfile, i: int) -> float:
    """Smallest flat payment delta_i making sensor i's equilibrium utility zero.

    delta_i >= gamma_i * (((n-1)/n)^2 * noise_i(a*_i)
                          + (1/n^2) * sum_{j != i} noise_j(a*_j))
               + cost_i(a*_i) / alpha_i

    guarantees participation; at equality the expected utility is exactly 0.
    In a symmetric game this collapses to
    gamma * (n-1) * noise(a*) / n + cost(a*) / alpha.
    """
    if len(equilibrium) != spec.n:
        raise ValueError(f"{len(equilibrium)} efforts for {spec.n} sensors")
    n = spec.n
    own = float(spec.sensors[i].noise.value(equilibrium.efforts[i]))
    cross = sum(
        float(s.noise.value(a))
        for j, (s, a) in enumerate(zip(spec.sensors, equilibrium.efforts))
        if j != i
    )
    s = spec.sensors[i]
    penalty = spec.contracts[i].gamma * (((n - 1) / n) ** 2 * own + cross / n**2)
    return penalty + float(s.cost.value(equilibrium.efforts[i])) / s.alpha


def total_budget(
    spec: GameSpec, equilibrium: EffortProfile, epsilon: float | None = None
) -> BudgetReport:
    """Total expected payment at the equilibrium, with floors.

    The participation floor sum_i cost_i(a*_i)/alpha_i lower-bounds the
    budget of every individually rational contract. When the game is
    symmetric and a quality target ``epsilon`` is supplied, the fundamental
    floor n * cost(noise^{-1}(epsilon)) / alpha is attached as well.
    """
    payments = tuple(
        expected_payment(spec, equilibrium, i) for i in range(spec.n)
    )
    ir_floor = sum(
        float(s.cost.value(a)) / s.alpha
        for s, a in zip(spec.sensors, equilibrium.efforts)
    )
    fundamental = None
    if epsilon is not None and spec.symmetric:
        fundamental = fundamental_budget(spec.sensors[0], spec.n, epsilon)
    return BudgetReport(
        total_budget=sum(payments),
        per_sensor_payment=payments,
        ir_floor=ir_floor,
        fundamental_floor=fundamental,
    )


def fundamental_budget(profile: SensorProfile, n: int, epsilon: float) -> float:
    """Least budget any individually rational contract needs for quality epsilon.

    Reaching noise_variance <= epsilon requires effort at least
    noise^{-1}(epsilon), so the participation floor gives
    n * cost(noise^{-1}(epsilon)) / alpha.
    """
    a_target = profile.noise.inverse(epsilon)
    return n * float(profile.cost.value(a_target)) / profile.alpha


def fundamental_performance(profile: SensorProfile, n: int, beta: float) -> float:
    """Best attainable quality under budget cap beta: noise(cost^{-1}(beta*alpha/n))."""
    per_sensor = beta * profile.alpha / n
    a_reachable = profile.cost.inverse(per_sensor)
    return float(profile.noise.value(a_reachable))


def design_optimal_contract(
    profile: SensorProfile, n: int, epsilon: float
) -> tuple[ContractParams, EquilibriumReport]:
    """Budget-optimal contract driving a symmetric game to quality epsilon.

    The penalty weight is chosen so the first-order condition holds exactly
    at the target effort a_t = noise^{-1}(epsilon):

        gamma = -(n/(n-1))^2 * cost'(a_t) / (alpha * noise'(a_t))

    and the flat payment sits at the participation floor:

        delta = gamma * (n-1) * epsilon / n + cost(a_t) / alpha.

    The realized budget then equals the fundamental floor
    n * cost(a_t) / alpha with per-sensor utility exactly zero. Requires the
    curvature condition
    noise''(a) * cost'(a_t) - cost''(a) * noise'(a_t) > 0 on the sampled
    grid (equivalent to strict convexity of the induced best-response
    objective) and an unbounded cost family.
    """
    a_target = float(profile.noise.inverse(epsilon))  # RangeError if unattainable
    if not profile.cost.unbounded_above:
        raise DesignError(f"cost family {profile.cost!r} is bounded above")
    slope_cost = float(profile.cost.deriv1(a_target))
    slope_noise = float(profile.noise.deriv1(a_target))
    curvature = profile.noise.deriv2(CONVEXITY_GRID) * slope_cost - profile.cost.deriv2(
        CONVEXITY_GRID
    ) * slope_noise
    if not _positive_on_grid(curvature, profile.noise, profile.cost, CONVEXITY_GRID):
        raise DesignError(
            "curvature condition noise''*cost'(a_t) - cost''*noise'(a_t) > 0 "
            "failed on the sampled grid"
        )
    gamma = -((n / (n - 1)) ** 2) * slope_cost / (profile.alpha * slope_noise)
    cost_at_target = float(profile.cost.value(a_target))
    delta = gamma * (n - 1) * epsilon / n + cost_at_target / profile.alpha
    per_sensor = cost_at_target / profile.alpha
    predicted = EquilibriumReport(
        efforts=(a_target,) * n,
        mse=epsilon / n,
        noise_variance=epsilon,
        payments=(per_sensor,) * n,
        utilities=(0.0,) * n,
        total_budget=n * per_sensor,
        boundary=(a_target == 0.0,) * n,
    )
    return ContractParams(gamma=gamma, delta=delta), predicted


def build_report(
    spec: GameSpec,
    equilibrium: EffortProfile,
    diagnostics: list[EquilibriumDiagnostics] | None = None,
) -> EquilibriumReport:
    """Assemble the flat outcome record for a solved game."""
    payments = tuple(expected_payment(spec, equilibrium, i) for i in range(spec.n))
    utilities = tuple(expected_utility(spec, equilibrium, i) for i in range(spec.n))
    noise_variance = None
    if spec.symmetric:
        noise_variance = float(
            spec.sensors[0].noise.value(equilibrium.efforts[0])
        )
    if diagnostics is None:
        boundary = tuple(a == 0.0 for a in equilibrium.efforts)
    else:
        boundary = tuple(d.boundary_solution for d in diagnostics)
    return EquilibriumReport(
        efforts=equilibrium.efforts,
        mse=estimator_mse(spec, equilibrium),
        noise_variance=noise_variance,
        payments=payments,
        utilities=utilities,
        total_budget=sum(payments),
        boundary=boundary,
    )

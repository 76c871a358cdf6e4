"""Contract-equilibrium computation.

Under the quadratic-deviation contract each sensor's expected utility splits
into a term it controls and a term driven only by the other sensors, so best
responses decouple: the equilibrium effort of sensor i minimizes

    objective_i(a) = alpha_i * gamma_i * ((n-1)/n)^2 * noise_i(a) + cost_i(a)

independently of everyone else (equilibrium efforts are dominant strategies).
This module builds that objective, checks the existence / interior /
convexity conditions, solves the first-order condition by bracketed
bisection, and provides a brute-force grid oracle plus the closed-form
sensitivity of the equilibrium effort to the penalty weight.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .game import EffortProfile, GameSpec, SensorProfile

__all__ = [
    "SolveError",
    "BestResponseObjective",
    "EquilibriumDiagnostics",
    "check_conditions",
    "solve_best_response",
    "solve_equilibrium",
    "grid_oracle",
    "equilibrium_sensitivity",
    "CONVEXITY_GRID",
    "BRACKET_CAP",
]

# Sampled stand-in for the "curvature positive everywhere" condition, which is
# not decidable numerically; documented as a check on this grid only.
CONVEXITY_GRID = np.geomspace(1e-6, 1e4, 1024)

# Bracket-expansion cap; exceeding it is reported as an existence failure.
BRACKET_CAP = 1e6

# Fallback brute-force search window when the convexity check fails.
_FALLBACK_A_MAX = 1e4
_FALLBACK_POINTS = 100_000


class SolveError(RuntimeError):
    """Equilibrium solving failed (existence violated or bracket overflow)."""


def _positive_on_grid(values, noise, cost, grid) -> bool:
    """True when ``values`` is positive everywhere it is representable.

    Fast noise decays underflow to exactly zero far out on the grid; there
    the noise contribution is positive but subnormal, so a zero is accepted
    as long as the noise family itself underflowed at that point and the
    cost curvature is not negative.
    """
    vals = np.asarray(values)
    if np.all(vals > 0):
        return True
    underflowed = (np.asarray(noise.deriv2(grid)) == 0.0) & (
        np.asarray(noise.value(grid)) == 0.0
    )
    cost_ok = np.asarray(cost.deriv2(grid)) >= 0.0
    return bool(np.all((vals > 0) | ((vals == 0.0) & underflowed & cost_ok)))


@dataclass(frozen=True)
class BestResponseObjective:
    """The function a single sensor minimizes when choosing its effort."""

    sensor: SensorProfile
    gamma: float
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be nonnegative, got {self.gamma!r}")

    @property
    def penalty_weight(self) -> float:
        """Effective weight on the noise term: alpha * gamma * ((n-1)/n)^2."""
        return self.sensor.alpha * self.gamma * ((self.n - 1) / self.n) ** 2

    def value(self, a):
        return self.penalty_weight * self.sensor.noise.value(a) + self.sensor.cost.value(a)

    def deriv1(self, a):
        return self.penalty_weight * self.sensor.noise.deriv1(a) + self.sensor.cost.deriv1(a)

    def deriv2(self, a):
        return self.penalty_weight * self.sensor.noise.deriv2(a) + self.sensor.cost.deriv2(a)


@dataclass(frozen=True)
class EquilibriumDiagnostics:
    """Truth values of the solvability conditions for one sensor.

    existence_ok:          the cost family grows without bound.
    interior_ok:           the objective slopes downward at zero effort.
    strict_convexity_ok:   objective curvature positive on the sampled grid.
    boundary_solution:     the returned effort is 0 (only when not interior).
    """

    existence_ok: bool
    interior_ok: bool
    strict_convexity_ok: bool
    boundary_solution: bool = False

    def __post_init__(self):
        if self.boundary_solution and self.interior_ok:
            raise ValueError("boundary_solution requires interior_ok to be false")


def check_conditions(obj: BestResponseObjective) -> EquilibriumDiagnostics:
    """Evaluate existence, interior, and strict-convexity conditions."""
    existence = obj.sensor.cost.unbounded_above
    interior = float(obj.deriv1(0.0)) < 0.0
    convex = _positive_on_grid(
        obj.deriv2(CONVEXITY_GRID), obj.sensor.noise, obj.sensor.cost, CONVEXITY_GRID
    )
    return EquilibriumDiagnostics(existence, interior, convex)


def solve_best_response(
    obj: BestResponseObjective, tol: float = 1e-10
) -> tuple[float, EquilibriumDiagnostics]:
    """Effort minimizing the best-response objective, with diagnostics.

    Interior case: the objective's derivative starts negative and, under
    strict convexity, is increasing, so a sign-change bracket grown
    geometrically from [0, 1] contains the unique root; bisection then runs
    until both the bracket width and the derivative residual are within
    ``tol``. A nonnegative slope at zero effort yields the boundary solution
    a = 0. If the sampled convexity check fails, the grid oracle supplies
    the minimizer and the diagnostics carry the failed flag.
    """
    diag = check_conditions(obj)
    if not diag.existence_ok:
        raise SolveError(f"cost family {obj.sensor.cost!r} is bounded above")
    if not diag.interior_ok:
        return 0.0, replace(diag, boundary_solution=True)
    if not diag.strict_convexity_ok:
        a = grid_oracle(obj, _FALLBACK_A_MAX, _FALLBACK_POINTS)
        if a == 0.0:
            # Interior slope is negative, so zero cannot minimize; keep the
            # oracle answer but do not mark it as a boundary solution.
            return a, diag
        return a, diag

    lo, hi = 0.0, 1.0
    while float(obj.deriv1(hi)) <= 0.0:
        lo = hi
        hi *= 2.0
        if hi > BRACKET_CAP:
            raise SolveError(
                f"no stationary effort below {BRACKET_CAP:g}; treating as existence failure"
            )
    while True:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break  # bracket at floating-point resolution
        if float(obj.deriv1(mid)) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol and abs(float(obj.deriv1(0.5 * (lo + hi)))) <= tol:
            break
    return 0.5 * (lo + hi), diag


def solve_equilibrium(
    spec: GameSpec, tol: float = 1e-10
) -> tuple[EffortProfile, list[EquilibriumDiagnostics]]:
    """Solve every sensor's best response; the profile is the equilibrium.

    Best responses are decoupled, so per-sensor solves are independent. For
    symmetric games the efforts are additionally checked to agree within
    ``tol`` (identical decoupled problems must give identical answers).
    """
    efforts: list[float] = []
    diags: list[EquilibriumDiagnostics] = []
    for sensor, contract in zip(spec.sensors, spec.contracts):
        a, d = solve_best_response(
            BestResponseObjective(sensor, contract.gamma, spec.n), tol
        )
        efforts.append(a)
        diags.append(d)
    if spec.symmetric and max(efforts) - min(efforts) > tol:
        raise SolveError(f"symmetric game produced asymmetric efforts {efforts!r}")
    return EffortProfile(tuple(efforts)), diags


def grid_oracle(obj: BestResponseObjective, a_max: float, points: int) -> float:
    """Brute-force minimizer of the objective over [0, a_max].

    Uniform grid search refined by 3 rounds of 10x local zoom around the
    running argmin. Ties break toward the smaller effort (first grid index).
    Independent of the bisection path; used as the verification oracle.
    """
    if points < 1000:
        raise ValueError(f"need points >= 1000, got {points}")
    if a_max <= 0:
        raise ValueError(f"need a_max > 0, got {a_max!r}")
    lo, hi = 0.0, float(a_max)
    best = 0.0
    for _ in range(4):
        grid = np.linspace(lo, hi, points)
        k = int(np.argmin(obj.value(grid)))
        best = float(grid[k])
        half = (hi - lo) / 20.0
        lo = max(0.0, best - half)
        hi = min(float(a_max), best + half)
    return best


def equilibrium_sensitivity(obj: BestResponseObjective, a_star: float) -> float:
    """Derivative of the interior equilibrium effort with respect to gamma.

    Closed form from differentiating the first-order condition:

        d a*/d gamma = -alpha * ((n-1)/n)^2 * noise'(a*)
                       / (penalty_weight * noise''(a*) + cost''(a*))

    Positive whenever the conditions hold: raising the penalty weight raises
    the equilibrium effort.
    """
    diag = check_conditions(obj)
    if not diag.strict_convexity_ok:
        raise ValueError("sensitivity requires strict convexity on the sampled grid")
    if a_star <= 0:
        raise ValueError("sensitivity is defined only at interior equilibria")
    s = obj.sensor
    share = ((obj.n - 1) / obj.n) ** 2
    num = -s.alpha * share * float(s.noise.deriv1(a_star))
    den = obj.penalty_weight * float(s.noise.deriv2(a_star)) + float(
        s.cost.deriv2(a_star)
    )
    return num / den

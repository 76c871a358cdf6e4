"""Sensing-contract game data model and analytic expectations.

n sensors measure a common scalar; sensor i's measurement error has variance
noise_i(a_i) at effort a_i, and the planner averages all reports. Payments
follow the quadratic-deviation contract

    p_i = delta_i - gamma_i * (estimate - report_i)**2,

and all expectations below are closed forms in the noise variances only
(errors are uncorrelated across sensors, so cross terms vanish).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .families import FunctionFamily

__all__ = [
    "SensorProfile",
    "ContractParams",
    "EffortProfile",
    "GameSpec",
    "estimator_mse",
    "expected_payment",
    "expected_utility",
]


@dataclass(frozen=True)
class SensorProfile:
    """One sensor: value-of-compensation weight plus cost and noise families."""

    alpha: float
    cost: FunctionFamily
    noise: FunctionFamily

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha!r}")
        if self.cost.role != "cost":
            raise ValueError(f"cost must be a cost family, got {self.cost!r}")
        if self.noise.role != "noise":
            raise ValueError(f"noise must be a noise family, got {self.noise!r}")


@dataclass(frozen=True)
class ContractParams:
    """Per-sensor contract: flat payment delta, deviation penalty weight gamma."""

    gamma: float
    delta: float

    def __post_init__(self):
        if self.gamma < 0 or self.delta < 0:
            raise ValueError(f"gamma and delta must be nonnegative, got {self!r}")


@dataclass(frozen=True)
class EffortProfile:
    """Ordered tuple of nonnegative sensor efforts."""

    efforts: tuple[float, ...]

    def __post_init__(self):
        efforts = tuple(float(a) for a in self.efforts)
        if any(a < 0 or not np.isfinite(a) for a in efforts):
            raise ValueError(f"efforts must be finite and nonnegative, got {efforts!r}")
        object.__setattr__(self, "efforts", efforts)

    def __len__(self) -> int:
        return len(self.efforts)

    def as_array(self) -> np.ndarray:
        return np.array(self.efforts)


@dataclass(frozen=True)
class GameSpec:
    """n sensors plus their contracts.

    The ``symmetric`` flag may be omitted (computed from the contents); a
    supplied flag inconsistent with the contents is rejected. Single-sensor
    games are rejected: with one sensor the estimate equals the lone report,
    the deviation penalty is identically zero, and the contract-design
    formulas divide by n - 1.
    """

    sensors: tuple[SensorProfile, ...]
    contracts: tuple[ContractParams, ...]
    symmetric: bool | None = None

    def __post_init__(self):
        sensors = tuple(self.sensors)
        contracts = tuple(self.contracts)
        object.__setattr__(self, "sensors", sensors)
        object.__setattr__(self, "contracts", contracts)
        if len(sensors) < 2:
            raise ValueError("a contract game needs at least two sensors")
        if len(sensors) != len(contracts):
            raise ValueError(
                f"{len(sensors)} sensors but {len(contracts)} contracts"
            )
        actual = all(s == sensors[0] for s in sensors) and all(
            c == contracts[0] for c in contracts
        )
        if self.symmetric is None:
            object.__setattr__(self, "symmetric", actual)
        elif self.symmetric != actual:
            raise ValueError(
                f"symmetric={self.symmetric} inconsistent with contents (actual {actual})"
            )

    @property
    def n(self) -> int:
        return len(self.sensors)

    @classmethod
    def symmetric_game(
        cls, n: int, profile: SensorProfile, contract: ContractParams
    ) -> "GameSpec":
        """Game with ``n`` identical sensors under one shared contract."""
        return cls(sensors=(profile,) * n, contracts=(contract,) * n)


def _require_match(spec: GameSpec, efforts: EffortProfile) -> None:
    if len(efforts) != spec.n:
        raise ValueError(f"{len(efforts)} efforts for {spec.n} sensors")


def _require_index(spec: GameSpec, i: int) -> None:
    if not 0 <= i < spec.n:
        raise IndexError(f"sensor index {i} out of range for n={spec.n}")


def estimator_mse(spec: GameSpec, efforts: EffortProfile) -> float:
    """Mean squared error of the averaging estimator: (1/n^2) sum_i noise_i(a_i).

    In a symmetric game with equal efforts this is noise(a)/n.
    """
    _require_match(spec, efforts)
    n = spec.n
    total = sum(
        float(s.noise.value(a)) for s, a in zip(spec.sensors, efforts.efforts)
    )
    return total / n**2


def expected_payment(spec: GameSpec, efforts: EffortProfile, i: int) -> float:
    """Expected contract payment to sensor i.

    E{p_i} = delta_i - gamma_i * (((n-1)/n)^2 * noise_i(a_i)
                                  + (1/n^2) * sum_{j != i} noise_j(a_j)).
    """
    _require_match(spec, efforts)
    _require_index(spec, i)
    n = spec.n
    own = float(spec.sensors[i].noise.value(efforts.efforts[i]))
    cross = sum(
        float(s.noise.value(a))
        for j, (s, a) in enumerate(zip(spec.sensors, efforts.efforts))
        if j != i
    )
    c = spec.contracts[i]
    return c.delta - c.gamma * (((n - 1) / n) ** 2 * own + cross / n**2)


def expected_utility(spec: GameSpec, efforts: EffortProfile, i: int) -> float:
    """Expected utility of sensor i: alpha_i * E{p_i} - cost_i(a_i)."""
    _require_match(spec, efforts)
    _require_index(spec, i)
    s = spec.sensors[i]
    return s.alpha * expected_payment(spec, efforts, i) - float(
        s.cost.value(efforts.efforts[i])
    )

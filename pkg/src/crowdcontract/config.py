"""JSON experiment-config schema: parsing and strict validation.

Top-level keys: "game", "contract", and optionally "sweep", "design",
"simulate", "output". Unknown keys are rejected at every level. Scalar
"game"/"contract" entries broadcast to all sensors; lists of length n
describe asymmetric games. The string sentinel "ir_floor" for "delta"
requests automatic calibration to the participation floor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .design import DesignTarget
from .families import (
    ExpCost,
    ExpNoise,
    FunctionFamily,
    HyperbolicNoise,
    PowerCost,
)
from .game import SensorProfile
from .simulation import NOISE_SHAPES, SimConfig

__all__ = [
    "ConfigError",
    "SweepBlock",
    "ScanBlock",
    "SimBlock",
    "ExperimentConfig",
    "load_config",
    "parse_config",
]


class ConfigError(ValueError):
    """The experiment config is malformed or violates the schema."""


_FAMILY_SCHEMAS: dict[str, tuple[type[FunctionFamily], set[str]]] = {
    "exp_cost": (ExpCost, {"scale", "rate"}),
    "power_cost": (PowerCost, {"scale", "exponent", "offset"}),
    "hyperbolic_noise": (HyperbolicNoise, {"scale"}),
    "exp_noise": (ExpNoise, {"initial", "rate"}),
}


@dataclass(frozen=True)
class SweepBlock:
    gamma_min: float
    gamma_max: float
    gamma_steps: int
    n_list: tuple[int, ...]


@dataclass(frozen=True)
class ScanBlock:
    sensor: int
    grid_min: float
    grid_max: float
    grid_step: float


@dataclass(frozen=True)
class SimBlock:
    replications: int
    seed: int
    true_value: float = 0.0
    noise_shape: str = "gaussian"
    scan: ScanBlock | None = None

    def sim_config(self, seed_override: int | None = None) -> SimConfig:
        return SimConfig(
            replications=self.replications,
            seed=self.seed if seed_override is None else seed_override,
            true_value=self.true_value,
            noise_shape=self.noise_shape,
        )


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment description; deltas None means "ir_floor"."""

    profiles: tuple[SensorProfile, ...]
    gammas: tuple[float, ...]
    deltas: tuple[float, ...] | None
    sweep: SweepBlock | None = None
    design: DesignTarget | None = None
    sim: SimBlock | None = None
    output: str | None = None

    @property
    def n(self) -> int:
        return len(self.profiles)

    @property
    def is_symmetric(self) -> bool:
        return (
            all(p == self.profiles[0] for p in self.profiles)
            and all(g == self.gammas[0] for g in self.gammas)
            and (self.deltas is None or all(d == self.deltas[0] for d in self.deltas))
        )


def _require_mapping(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{path}: expected an object, got {type(value).__name__}")
    return value


def _check_keys(obj: dict, path: str, required: set[str], optional: set[str]) -> None:
    for key in obj:
        if key not in required and key not in optional:
            raise ConfigError(f"{path}: unknown key {key!r}")
    for key in required:
        if key not in obj:
            raise ConfigError(f"{path}: missing required key {key!r}")


def _as_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _as_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer, got {value!r}")
    return value


def _parse_family(value, path: str) -> FunctionFamily:
    obj = _require_mapping(value, path)
    if "kind" not in obj:
        raise ConfigError(f"{path}: missing required key 'kind'")
    kind = obj["kind"]
    if kind not in _FAMILY_SCHEMAS:
        raise ConfigError(
            f"{path}.kind: unknown family {kind!r}; expected one of "
            f"{sorted(_FAMILY_SCHEMAS)}"
        )
    cls, allowed = _FAMILY_SCHEMAS[kind]
    params = {}
    for key, raw in obj.items():
        if key == "kind":
            continue
        if key not in allowed:
            raise ConfigError(f"{path}: unknown key {key!r} for family {kind!r}")
        params[key] = _as_number(raw, f"{path}.{key}")
    try:
        return cls(**params)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _per_sensor(value, n: int, path: str, parse_one):
    """Broadcast a scalar entry or map a length-n list element-wise."""
    if isinstance(value, list):
        if len(value) != n:
            raise ConfigError(f"{path}: expected {n} entries, got {len(value)}")
        return tuple(parse_one(v, f"{path}[{k}]") for k, v in enumerate(value))
    one = parse_one(value, path)
    return (one,) * n


def _parse_game(value, path: str) -> tuple[SensorProfile, ...]:
    obj = _require_mapping(value, path)
    _check_keys(obj, path, required={"n", "alpha", "cost", "noise"}, optional=set())
    n = _as_int(obj["n"], f"{path}.n")
    if n < 2:
        raise ConfigError(f"{path}.n: need at least 2 sensors, got {n}")
    alphas = _per_sensor(obj["alpha"], n, f"{path}.alpha", _as_number)
    costs = _per_sensor(obj["cost"], n, f"{path}.cost", _parse_family)
    noises = _per_sensor(obj["noise"], n, f"{path}.noise", _parse_family)
    try:
        return tuple(
            SensorProfile(alpha=a, cost=c, noise=e)
            for a, c, e in zip(alphas, costs, noises)
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _parse_contract(
    value, n: int, path: str
) -> tuple[tuple[float, ...], tuple[float, ...] | None]:
    obj = _require_mapping(value, path)
    _check_keys(obj, path, required={"gamma", "delta"}, optional=set())
    gammas = _per_sensor(obj["gamma"], n, f"{path}.gamma", _as_number)
    if any(g < 0 for g in gammas):
        raise ConfigError(f"{path}.gamma: must be nonnegative")
    raw_delta = obj["delta"]
    if raw_delta == "ir_floor":
        return gammas, None
    deltas = _per_sensor(raw_delta, n, f"{path}.delta", _as_number)
    if any(d < 0 for d in deltas):
        raise ConfigError(f"{path}.delta: must be nonnegative")
    return gammas, deltas


def _parse_sweep(value, path: str) -> SweepBlock:
    obj = _require_mapping(value, path)
    _check_keys(
        obj,
        path,
        required={"gamma_min", "gamma_max", "gamma_steps", "n_list"},
        optional=set(),
    )
    gamma_min = _as_number(obj["gamma_min"], f"{path}.gamma_min")
    gamma_max = _as_number(obj["gamma_max"], f"{path}.gamma_max")
    gamma_steps = _as_int(obj["gamma_steps"], f"{path}.gamma_steps")
    if gamma_min <= 0:
        raise ConfigError(f"{path}.gamma_min: must be positive (log-spaced grid)")
    if gamma_max < gamma_min:
        raise ConfigError(f"{path}.gamma_max: must be >= gamma_min")
    if gamma_steps < 1:
        raise ConfigError(f"{path}.gamma_steps: must be >= 1")
    raw_list = obj["n_list"]
    if not isinstance(raw_list, list) or not raw_list:
        raise ConfigError(f"{path}.n_list: expected a nonempty list")
    n_list = tuple(_as_int(v, f"{path}.n_list[{k}]") for k, v in enumerate(raw_list))
    if any(n < 2 for n in n_list):
        raise ConfigError(f"{path}.n_list: every n must be >= 2")
    return SweepBlock(gamma_min, gamma_max, gamma_steps, n_list)


def _parse_design(value, path: str) -> DesignTarget:
    obj = _require_mapping(value, path)
    _check_keys(obj, path, required=set(), optional={"epsilon", "beta"})
    epsilon = obj.get("epsilon")
    beta = obj.get("beta")
    if epsilon is not None:
        epsilon = _as_number(epsilon, f"{path}.epsilon")
    if beta is not None:
        beta = _as_number(beta, f"{path}.beta")
    try:
        return DesignTarget(epsilon=epsilon, beta=beta)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _parse_scan(value, path: str) -> ScanBlock:
    obj = _require_mapping(value, path)
    _check_keys(
        obj,
        path,
        required={"sensor", "grid_min", "grid_max", "grid_step"},
        optional=set(),
    )
    sensor = _as_int(obj["sensor"], f"{path}.sensor")
    grid_min = _as_number(obj["grid_min"], f"{path}.grid_min")
    grid_max = _as_number(obj["grid_max"], f"{path}.grid_max")
    grid_step = _as_number(obj["grid_step"], f"{path}.grid_step")
    if sensor < 0:
        raise ConfigError(f"{path}.sensor: must be nonnegative")
    if grid_min < 0 or grid_max <= grid_min or grid_step <= 0:
        raise ConfigError(f"{path}: need 0 <= grid_min < grid_max and grid_step > 0")
    return ScanBlock(sensor, grid_min, grid_max, grid_step)


def _parse_simulate(value, path: str) -> SimBlock:
    obj = _require_mapping(value, path)
    _check_keys(
        obj,
        path,
        required={"replications", "seed"},
        optional={"true_value", "noise_shape", "deviation_scan"},
    )
    replications = _as_int(obj["replications"], f"{path}.replications")
    seed = _as_int(obj["seed"], f"{path}.seed")
    if replications < 1:
        raise ConfigError(f"{path}.replications: must be >= 1")
    if not 0 <= seed < 2**64:
        raise ConfigError(f"{path}.seed: must be a 64-bit unsigned integer")
    true_value = _as_number(obj.get("true_value", 0.0), f"{path}.true_value")
    noise_shape = obj.get("noise_shape", "gaussian")
    if noise_shape not in NOISE_SHAPES:
        raise ConfigError(
            f"{path}.noise_shape: expected one of {list(NOISE_SHAPES)}, got {noise_shape!r}"
        )
    scan = None
    if "deviation_scan" in obj:
        scan = _parse_scan(obj["deviation_scan"], f"{path}.deviation_scan")
    return SimBlock(
        replications=replications,
        seed=seed,
        true_value=true_value,
        noise_shape=noise_shape,
        scan=scan,
    )


def parse_config(doc) -> ExperimentConfig:
    """Validate a decoded JSON document and build the experiment config."""
    obj = _require_mapping(doc, "config")
    _check_keys(
        obj,
        "config",
        required={"game", "contract"},
        optional={"sweep", "design", "simulate", "output"},
    )
    profiles = _parse_game(obj["game"], "game")
    gammas, deltas = _parse_contract(obj["contract"], len(profiles), "contract")
    sweep = _parse_sweep(obj["sweep"], "sweep") if "sweep" in obj else None
    design = _parse_design(obj["design"], "design") if "design" in obj else None
    sim = _parse_simulate(obj["simulate"], "simulate") if "simulate" in obj else None
    output = None
    if "output" in obj:
        if not isinstance(obj["output"], str) or not obj["output"]:
            raise ConfigError("output: expected a nonempty string path")
        output = obj["output"]
    if sim is not None and sim.scan is not None and sim.scan.sensor >= len(profiles):
        raise ConfigError(
            f"simulate.deviation_scan.sensor: index {sim.scan.sensor} out of range "
            f"for n={len(profiles)}"
        )
    return ExperimentConfig(
        profiles=profiles,
        gammas=gammas,
        deltas=deltas,
        sweep=sweep,
        design=design,
        sim=sim,
        output=output,
    )


def load_config(path: str | Path) -> ExperimentConfig:
    """Read, decode, and validate a JSON experiment config file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
    return parse_config(doc)

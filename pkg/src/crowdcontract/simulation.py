"""Monte-Carlo simulator of the sensing round.

Each replication draws one zero-mean measurement error per sensor with
variance exactly noise_i(a_i), forms the averaging estimate, pays the
quadratic-deviation contract, and records squared estimator error, payments,
and utilities. Every reported quantity depends on the measurements only
through their deviations from the truth, so the true value cancels exactly
and results are invariant to it by construction.

Randomness discipline: sensor i draws from a counter-based Philox stream
keyed by (seed, i); replication r is the r-th variate of that stream. Streams
are mutually independent and regenerable, which makes results bit-identical
for a fixed (seed, game, efforts, replications) and lets the deviation scan
reuse the exact same noise across scenarios (common random numbers).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .game import EffortProfile, GameSpec

__all__ = [
    "SimConfig",
    "SimResult",
    "DeviationPoint",
    "simulate",
    "deviation_scan",
    "NOISE_SHAPES",
]

NOISE_SHAPES = ("gaussian", "uniform_symmetric")

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class SimConfig:
    """Replication count, stream seed, true value, and noise shape.

    Both shapes are variance-matched by construction (the scale factor is
    derived from the target variance), so shape is a robustness knob: the
    analytic formulas depend on second moments only.
    """

    replications: int
    seed: int
    true_value: float = 0.0
    noise_shape: str = "gaussian"

    def __post_init__(self):
        if self.replications < 1:
            raise ValueError(f"replications must be >= 1, got {self.replications}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.noise_shape not in NOISE_SHAPES:
            raise ValueError(
                f"noise_shape must be one of {NOISE_SHAPES}, got {self.noise_shape!r}"
            )


@dataclass(frozen=True)
class SimResult:
    """Empirical means with standard errors (sample std / sqrt(R))."""

    mse: float
    mse_se: float
    payments: tuple[float, ...]
    payment_ses: tuple[float, ...]
    utilities: tuple[float, ...]
    utility_ses: tuple[float, ...]
    replications: int


@dataclass(frozen=True)
class DeviationPoint:
    """Empirical utility of the scanned sensor at one trial effort."""

    effort: float
    utility: float
    utility_se: float


def _unit_draws(seed: int, sensor: int, shape: str, count: int) -> np.ndarray:
    """Unit-variance, zero-mean draws for one sensor's keyed stream."""
    bits = np.random.Philox(key=np.array([seed, sensor], dtype=np.uint64))
    rng = np.random.Generator(bits)
    if shape == "gaussian":
        return rng.standard_normal(count)
    # symmetric uniform on [-sqrt(3), sqrt(3)] has variance exactly 1
    return (2.0 * rng.random(count) - 1.0) * _SQRT3


def _mean_se(samples: np.ndarray) -> tuple[float, float]:
    m = float(np.mean(samples))
    if samples.size < 2:
        return m, 0.0
    return m, float(np.std(samples, ddof=1) / math.sqrt(samples.size))


def simulate(spec: GameSpec, efforts: EffortProfile, cfg: SimConfig) -> SimResult:
    """Run the sensing round ``cfg.replications`` times and summarize.

    Two passes over the per-sensor streams keep memory at O(replications):
    the first accumulates the average measurement error per replication, the
    second regenerates each sensor's draws to score its payment and utility.
    """
    if len(efforts) != spec.n:
        raise ValueError(f"{len(efforts)} efforts for {spec.n} sensors")
    n, R = spec.n, cfg.replications
    sds = [
        math.sqrt(float(s.noise.value(a)))
        for s, a in zip(spec.sensors, efforts.efforts)
    ]

    mean_error = np.zeros(R)
    for i in range(n):
        mean_error += sds[i] * _unit_draws(cfg.seed, i, cfg.noise_shape, R)
    mean_error /= n

    mse, mse_se = _mean_se(mean_error**2)

    payments, payment_ses, utilities, utility_ses = [], [], [], []
    for i in range(n):
        w = sds[i] * _unit_draws(cfg.seed, i, cfg.noise_shape, R)
        deviation = mean_error - w  # estimate minus report, truth cancels
        c = spec.contracts[i]
        s = spec.sensors[i]
        p = c.delta - c.gamma * deviation**2
        u = s.alpha * p - float(s.cost.value(efforts.efforts[i]))
        pm, pse = _mean_se(p)
        um, use = _mean_se(u)
        payments.append(pm)
        payment_ses.append(pse)
        utilities.append(um)
        utility_ses.append(use)

    return SimResult(
        mse=mse,
        mse_se=mse_se,
        payments=tuple(payments),
        payment_ses=tuple(payment_ses),
        utilities=tuple(utilities),
        utility_ses=tuple(utility_ses),
        replications=R,
    )


def deviation_scan(
    spec: GameSpec,
    efforts: EffortProfile,
    i: int,
    grid: list[float] | np.ndarray,
    cfg: SimConfig,
) -> list[DeviationPoint]:
    """Empirical utility of sensor i at each trial effort, others held fixed.

    All grid points share one set of base draws (common random numbers): the
    other sensors' noise is identical across points and sensor i's base
    draws are rescaled to each trial effort's variance, so utility
    comparisons across the grid are far sharper than independent runs.
    """
    if len(efforts) != spec.n:
        raise ValueError(f"{len(efforts)} efforts for {spec.n} sensors")
    if not 0 <= i < spec.n:
        raise IndexError(f"sensor index {i} out of range for n={spec.n}")
    trial_efforts = [float(a) for a in grid]
    if not trial_efforts:
        raise ValueError("deviation grid must be nonempty")
    if any(a < 0 for a in trial_efforts):
        raise ValueError("deviation grid efforts must be nonnegative")

    n, R = spec.n, cfg.replications
    others = np.zeros(R)
    for j in range(n):
        if j == i:
            continue
        sd_j = math.sqrt(float(spec.sensors[j].noise.value(efforts.efforts[j])))
        others += sd_j * _unit_draws(cfg.seed, j, cfg.noise_shape, R)
    base = _unit_draws(cfg.seed, i, cfg.noise_shape, R)

    s = spec.sensors[i]
    c = spec.contracts[i]
    points = []
    for a in trial_efforts:
        w = math.sqrt(float(s.noise.value(a))) * base
        deviation = (others + w) / n - w
        u = s.alpha * (c.delta - c.gamma * deviation**2) - float(s.cost.value(a))
        um, use = _mean_se(u)
        points.append(DeviationPoint(effort=a, utility=um, utility_se=use))
    return points

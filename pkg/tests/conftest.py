"""Shared draw helpers for randomized tests."""

from crowdcontract.equilibrium import BestResponseObjective
from crowdcontract.families import ExpCost, ExpNoise, HyperbolicNoise, PowerCost
from crowdcontract.game import SensorProfile

# Benchmark setup used across modules: unit-rate exponential cost against
# unit-scale hyperbolic noise, alpha = 1.
BENCH_PROFILE = SensorProfile(
    alpha=1.0, cost=ExpCost(1.0, 1.0), noise=HyperbolicNoise(1.0)
)


def draw_cost(rng):
    if rng.random() < 0.5:
        return ExpCost(scale=rng.uniform(0.2, 3.0), rate=rng.uniform(0.3, 2.0))
    # exponents in (1, 2) have unbounded curvature at zero effort; stay clear
    exponent = 1.0 if rng.random() < 0.3 else float(rng.uniform(2.0, 4.0))
    return PowerCost(
        scale=rng.uniform(0.2, 3.0), exponent=exponent, offset=rng.uniform(0.0, 1.0)
    )


def draw_noise(rng):
    if rng.random() < 0.5:
        return HyperbolicNoise(scale=rng.uniform(0.3, 3.0))
    return ExpNoise(initial=rng.uniform(0.3, 3.0), rate=rng.uniform(0.2, 2.0))


def draw_profile(rng):
    return SensorProfile(
        alpha=float(rng.uniform(0.5, 2.0)), cost=draw_cost(rng), noise=draw_noise(rng)
    )


def draw_objective(rng, n_max=100):
    """Random best-response objective with log-uniform gamma in [1e-2, 1e3]."""
    gamma = float(10.0 ** rng.uniform(-2, 3))
    n = int(rng.integers(2, n_max + 1))
    return BestResponseObjective(draw_profile(rng), gamma, n)


def draw_efforts(rng, n, high=4.0):
    return tuple(float(a) for a in rng.uniform(0.0, high, size=n))

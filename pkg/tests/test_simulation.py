"""Monte-Carlo simulator: moments, determinism, agreement, deviation scans."""

import math

import numpy as np
import pytest
from conftest import BENCH_PROFILE

from crowdcontract.design import design_optimal_contract, ir_delta_floor
from crowdcontract.equilibrium import solve_equilibrium
from crowdcontract.game import ContractParams, EffortProfile, GameSpec
from crowdcontract.simulation import (
    SimConfig,
    deviation_scan,
    simulate,
    _unit_draws,
)


def flat_game(n=10, delta=1.0):
    return GameSpec.symmetric_game(n, BENCH_PROFILE, ContractParams(0.0, delta))


def solved_benchmark_game(gamma=5.0):
    spec0 = GameSpec.symmetric_game(10, BENCH_PROFILE, ContractParams(gamma, 0.0))
    efforts, _ = solve_equilibrium(spec0, tol=1e-12)
    delta = ir_delta_floor(spec0, efforts, 0)
    spec = GameSpec.symmetric_game(10, BENCH_PROFILE, ContractParams(gamma, delta))
    return spec, efforts


def designed_game(epsilon=0.5, n=10):
    contract, _ = design_optimal_contract(BENCH_PROFILE, n, epsilon)
    spec = GameSpec.symmetric_game(n, BENCH_PROFILE, contract)
    efforts, _ = solve_equilibrium(spec, tol=1e-12)
    return spec, efforts


def within_band(analytic, empirical, se, k=4.0):
    return abs(empirical - analytic) <= k * se + 1e-13


@pytest.mark.parametrize("shape", ["gaussian", "uniform_symmetric"])
def test_unit_draws_are_standardized(shape):
    R = 200_000
    z = _unit_draws(seed=7, sensor=0, shape=shape, count=R)
    assert abs(z.mean()) <= 4.0 / math.sqrt(R)
    kurt = 3.0 if shape == "gaussian" else 1.8  # fourth moment of each shape
    var_se = math.sqrt((kurt - 1.0) / R)
    assert abs(z.var(ddof=1) - 1.0) <= 4.0 * var_se


def test_unit_draws_independent_per_sensor():
    a = _unit_draws(seed=7, sensor=0, shape="gaussian", count=1000)
    b = _unit_draws(seed=7, sensor=1, shape="gaussian", count=1000)
    assert not np.array_equal(a, b)
    again = _unit_draws(seed=7, sensor=0, shape="gaussian", count=1000)
    assert np.array_equal(a, again)


def test_bit_identical_reruns():
    spec, efforts = solved_benchmark_game()
    cfg = SimConfig(replications=20_000, seed=99)
    assert simulate(spec, efforts, cfg) == simulate(spec, efforts, cfg)


def test_true_value_invariance():
    spec, efforts = solved_benchmark_game()
    results = [
        simulate(spec, efforts, SimConfig(replications=5000, seed=3, true_value=x))
        for x in (0.0, 1.0, -7.3)
    ]
    assert results[0] == results[1] == results[2]


def test_flat_contract_payment_deterministic():
    spec = flat_game()
    efforts = EffortProfile((0.0,) * 10)
    res = simulate(spec, efforts, SimConfig(replications=100_000, seed=5))
    assert within_band(0.1, res.mse, res.mse_se)
    assert res.payments == (1.0,) * 10  # no penalty term, so payment is exact
    assert res.payment_ses == (0.0,) * 10
    assert res.utilities == (0.0,) * 10  # alpha * delta - cost(0) = 0


def test_agreement_benchmark_contract():
    from crowdcontract.game import estimator_mse, expected_payment, expected_utility

    spec, efforts = solved_benchmark_game()
    res = simulate(spec, efforts, SimConfig(replications=100_000, seed=11))
    assert within_band(estimator_mse(spec, efforts), res.mse, res.mse_se)
    for i in range(spec.n):
        assert within_band(
            expected_payment(spec, efforts, i), res.payments[i], res.payment_ses[i]
        )
        assert within_band(
            expected_utility(spec, efforts, i), res.utilities[i], res.utility_ses[i]
        )


def test_agreement_designed_contract_large_r():
    spec, efforts = designed_game()
    res = simulate(spec, efforts, SimConfig(replications=1_000_000, seed=17))
    # symmetric identity: E{p} = delta - gamma * (n-1) * epsilon / n = e
    assert within_band(math.e, res.payments[0], res.payment_ses[0])
    assert within_band(0.0, res.utilities[0], res.utility_ses[0])


def test_agreement_uniform_shape():
    from crowdcontract.game import estimator_mse, expected_payment

    spec, efforts = solved_benchmark_game()
    cfg = SimConfig(replications=100_000, seed=23, noise_shape="uniform_symmetric")
    res = simulate(spec, efforts, cfg)
    assert within_band(estimator_mse(spec, efforts), res.mse, res.mse_se)
    for i in range(spec.n):
        assert within_band(
            expected_payment(spec, efforts, i), res.payments[i], res.payment_ses[i]
        )


def test_mse_shrinks_with_effort():
    spec = flat_game()
    big = EffortProfile((50.0,) * 10)
    res = simulate(spec, big, SimConfig(replications=50_000, seed=29))
    analytic = float(BENCH_PROFILE.noise.value(50.0)) / 10
    assert within_band(analytic, res.mse, res.mse_se)
    assert res.mse < 0.01


def test_scan_flat_contract_reproduces_cost_curve():
    spec = flat_game(delta=1.0)
    efforts = EffortProfile((0.0,) * 10)
    grid = [0.0, 0.25, 0.5, 1.0]
    points = deviation_scan(spec, efforts, 0, grid, SimConfig(replications=4000, seed=31))
    for p in points:
        expected = 1.0 - float(BENCH_PROFILE.cost.value(p.effort))
        assert p.utility == pytest.approx(expected, rel=1e-12, abs=1e-12)
        assert p.utility_se <= 1e-12


def test_scan_argmax_near_equilibrium():
    spec, efforts = designed_game()
    grid = np.linspace(0.0, 2.0, 41)  # step 0.05
    points = deviation_scan(spec, efforts, 0, grid, SimConfig(replications=100_000, seed=37))
    best = max(points, key=lambda p: p.utility)
    assert abs(best.effort - 1.0) <= 0.05 + 1e-12


def test_scan_argmax_stable_under_scrambled_others():
    spec, efforts = designed_game()
    grid = np.linspace(0.0, 2.0, 41)
    rng = np.random.default_rng(41)
    argmaxes = []
    for k in range(3):
        scrambled = list(efforts.efforts)
        for j in range(1, spec.n):
            scrambled[j] = abs(scrambled[j] + rng.normal(0.0, 0.5))
        points = deviation_scan(
            spec,
            EffortProfile(tuple(scrambled)),
            0,
            grid,
            SimConfig(replications=100_000, seed=43 + k),
        )
        argmaxes.append(max(points, key=lambda p: p.utility).effort)
    assert all(abs(a - 1.0) <= 0.05 + 1e-12 for a in argmaxes)


def test_scan_validation():
    spec, efforts = solved_benchmark_game()
    cfg = SimConfig(replications=100, seed=1)
    with pytest.raises(IndexError):
        deviation_scan(spec, efforts, 10, [0.0], cfg)
    with pytest.raises(ValueError):
        deviation_scan(spec, efforts, 0, [], cfg)
    with pytest.raises(ValueError):
        deviation_scan(spec, efforts, 0, [-0.5], cfg)


def test_sim_config_validation():
    with pytest.raises(ValueError):
        SimConfig(replications=0, seed=1)
    with pytest.raises(ValueError):
        SimConfig(replications=10, seed=-1)
    with pytest.raises(ValueError):
        SimConfig(replications=10, seed=2**64)
    with pytest.raises(ValueError):
        SimConfig(replications=10, seed=1, noise_shape="cauchy")


def test_standard_error_definition():
    spec, efforts = solved_benchmark_game()
    res = simulate(spec, efforts, SimConfig(replications=1, seed=53))
    assert res.mse_se == 0.0  # single replication has no spread estimate
    assert res.replications == 1

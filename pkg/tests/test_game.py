"""Game-model construction rules and the analytic expectation formulas."""

import numpy as np
import pytest

from crowdcontract.families import ExpCost, ExpNoise, HyperbolicNoise, PowerCost
from crowdcontract.game import (
    ContractParams,
    EffortProfile,
    GameSpec,
    SensorProfile,
    estimator_mse,
    expected_payment,
    expected_utility,
)

BENCH = SensorProfile(alpha=1.0, cost=ExpCost(1.0, 1.0), noise=HyperbolicNoise(1.0))


def symmetric(n, gamma, delta, profile=BENCH):
    return GameSpec.symmetric_game(n, profile, ContractParams(gamma, delta))


def random_games(rng, count):
    for _ in range(count):
        n = int(rng.integers(2, 9))
        sensors, contracts = [], []
        for _ in range(n):
            cost = (
                ExpCost(rng.uniform(0.2, 2.0), rng.uniform(0.3, 1.5))
                if rng.random() < 0.5
                else PowerCost(rng.uniform(0.2, 2.0), rng.uniform(2.0, 3.0), rng.uniform(0, 1))
            )
            noise = (
                HyperbolicNoise(rng.uniform(0.3, 3.0))
                if rng.random() < 0.5
                else ExpNoise(rng.uniform(0.3, 3.0), rng.uniform(0.2, 2.0))
            )
            sensors.append(SensorProfile(rng.uniform(0.5, 2.0), cost, noise))
            contracts.append(ContractParams(rng.uniform(0, 10), rng.uniform(0, 5)))
        spec = GameSpec(tuple(sensors), tuple(contracts))
        efforts = EffortProfile(tuple(rng.uniform(0, 4, size=n)))
        yield spec, efforts


def test_mse_trivial_cases():
    spec = symmetric(10, 0.0, 0.0)
    assert estimator_mse(spec, EffortProfile((0.0,) * 10)) == pytest.approx(0.1)
    spec2 = symmetric(2, 0.0, 0.0)
    assert estimator_mse(spec2, EffortProfile((1.0, 3.0))) == pytest.approx(0.1875)


def test_mse_symmetric_identity():
    spec = symmetric(7, 3.0, 1.0)
    for a in (0.0, 0.4, 2.5):
        mse = estimator_mse(spec, EffortProfile((a,) * 7))
        assert mse == pytest.approx(BENCH.noise.value(a) / 7, rel=1e-14)


def test_utility_trivial_cases():
    spec = symmetric(5, 0.0, 0.0)
    assert expected_utility(spec, EffortProfile((0.0,) * 5), 0) == pytest.approx(-1.0)
    # n=10, gamma=5, delta=0, zero efforts: -(5 * (0.81 + 0.09) + 1) = -5.5
    spec2 = symmetric(10, 5.0, 0.0)
    assert expected_utility(spec2, EffortProfile((0.0,) * 10), 3) == pytest.approx(-5.5)


def test_payment_trivial_cases():
    spec = symmetric(4, 0.0, 2.5)
    assert expected_payment(spec, EffortProfile((1.0, 0.2, 3.0, 0.0)), 2) == 2.5
    # n=10, gamma=5, delta=3, zero efforts: 3 - 5 * 0.9 = -1.5
    spec2 = symmetric(10, 5.0, 3.0)
    assert expected_payment(spec2, EffortProfile((0.0,) * 10), 0) == pytest.approx(-1.5)


def test_payment_symmetric_collapse():
    # equal efforts: E{p} = delta - gamma * (n-1) * noise(a) / n
    rng = np.random.default_rng(42)
    for _ in range(50):
        n = int(rng.integers(2, 20))
        gamma, delta, a = rng.uniform(0, 8), rng.uniform(0, 5), rng.uniform(0, 3)
        spec = symmetric(n, gamma, delta)
        got = expected_payment(spec, EffortProfile((a,) * n), 0)
        want = delta - gamma * (n - 1) * float(BENCH.noise.value(a)) / n
        assert got == pytest.approx(want, rel=1e-12, abs=1e-12)


def test_utility_payment_identity():
    rng = np.random.default_rng(7)
    for spec, efforts in random_games(rng, 40):
        for i in range(spec.n):
            lhs = expected_utility(spec, efforts, i)
            s = spec.sensors[i]
            rhs = s.alpha * expected_payment(spec, efforts, i) - float(
                s.cost.value(efforts.efforts[i])
            )
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


def test_mse_permutation_invariance():
    spec = symmetric(6, 2.0, 1.0)
    efforts = (0.3, 1.2, 0.0, 2.2, 0.7, 0.1)
    base = estimator_mse(spec, EffortProfile(efforts))
    rng = np.random.default_rng(11)
    for _ in range(5):
        perm = tuple(rng.permutation(efforts))
        assert estimator_mse(spec, EffortProfile(perm)) == pytest.approx(base, rel=1e-14)


def test_single_sensor_rejected():
    with pytest.raises(ValueError):
        GameSpec(sensors=(BENCH,), contracts=(ContractParams(1.0, 1.0),))


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        GameSpec(sensors=(BENCH, BENCH), contracts=(ContractParams(1.0, 1.0),))
    spec = symmetric(3, 1.0, 1.0)
    with pytest.raises(ValueError):
        estimator_mse(spec, EffortProfile((0.0, 0.0)))


def test_symmetric_flag_consistency():
    contracts = (ContractParams(1.0, 1.0), ContractParams(2.0, 1.0))
    spec = GameSpec(sensors=(BENCH, BENCH), contracts=contracts)
    assert spec.symmetric is False
    with pytest.raises(ValueError):
        GameSpec(sensors=(BENCH, BENCH), contracts=contracts, symmetric=True)
    assert symmetric(3, 1.0, 1.0).symmetric is True


def test_negative_effort_rejected():
    with pytest.raises(ValueError):
        EffortProfile((0.5, -0.1))


def test_invalid_profile_and_contract():
    with pytest.raises(ValueError):
        SensorProfile(alpha=0.0, cost=ExpCost(), noise=HyperbolicNoise())
    with pytest.raises(ValueError):
        SensorProfile(alpha=1.0, cost=HyperbolicNoise(), noise=HyperbolicNoise())
    with pytest.raises(ValueError):
        SensorProfile(alpha=1.0, cost=ExpCost(), noise=ExpCost())
    with pytest.raises(ValueError):
        ContractParams(gamma=-1.0, delta=0.0)


def test_index_out_of_range():
    spec = symmetric(3, 1.0, 1.0)
    efforts = EffortProfile((0.0,) * 3)
    with pytest.raises(IndexError):
        expected_payment(spec, efforts, 3)
    with pytest.raises(IndexError):
        expected_utility(spec, efforts, -1)

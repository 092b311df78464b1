import numpy as np
import pytest

from airoas.bounds.config import BoundKind, BoundsConfig, BoundSpec
from airoas.bounds.exceptions import InvalidBounds, UnsupportedBound
from airoas.bounds.initializers import (
    BoundInitializer,
    FixedActionRollout,
    FixedValue,
    MdpApprox,
    ParticleBounds,
    fixed_action_rollout_lower,
    fixed_bounds,
    mdp_upper,
)
from airoas.core.particles import WeightedParticleSet
from airoas.domains.config import RockSampleParams
from airoas.domains.lightdark import LightDark
from airoas.domains.rocksample import EAST, RockSample
from airoas.exceptions import ZeroTotalWeight
from toy_models import BanditModel


@pytest.fixture
def rocksample():
    return RockSample(RockSampleParams(size=5, n_rocks=1, rock_positions=[[0, 0]]))


def _rock_state(x, y, good):
    return np.array([[x, y, int(good), 0]])


@pytest.mark.parametrize(
    "lo,hi",
    [(-20.0, 0.0), (-11.0, 11.0), (3.0, 3.0)],
)
def test_fixed_bounds(lo, hi):
    assert fixed_bounds(lo, hi) == (lo, hi)


@pytest.mark.parametrize("lo,hi", [(1.0, 0.0), (None, 1.0), (0.0, None)])
def test_fixed_bounds_invalid(lo, hi):
    with pytest.raises(InvalidBounds) as e:
        fixed_bounds(lo, hi)
    assert (e.value.lower, e.value.upper) == (lo, hi)


def test_fixed_bounds_ignore_the_belief(rng):
    init = BoundInitializer.fixed(-20.0, 0.0)
    b = WeightedParticleSet(rng.normal(size=(5, 1)), rng.uniform(0.1, 1.0, size=5))
    assert init.bounds(b, BanditModel(), rng) == (-20.0, 0.0)


@pytest.mark.parametrize("x,expected", [(3, 10 * 0.95), (1, 10 * 0.95**3)])
def test_rollout_walks_to_the_exit(rocksample, rng, x, expected):
    """Repeating east reaches the exit after n - 1 - x moves."""
    b = WeightedParticleSet.uniform(_rock_state(x, 2, False))
    value = fixed_action_rollout_lower(b, rocksample, horizon=40, rng=rng, actions=[EAST])
    assert value == pytest.approx(expected)


def test_rollout_short_horizon_misses_the_exit(rocksample, rng):
    b = WeightedParticleSet.uniform(_rock_state(1, 2, False))
    assert fixed_action_rollout_lower(b, rocksample, 2, rng, [EAST]) == 0.0


def test_rollout_takes_best_action(rocksample, rng):
    values = FixedActionRollout(horizon=10).particle_values(
        _rock_state(3, 2, False), rocksample, rng
    )
    assert values.shape == (len(rocksample.actions()), 1)
    assert values.max() == pytest.approx(9.5)


def test_mdp_upper_exit_only(rocksample):
    b = WeightedParticleSet.uniform(_rock_state(3, 2, False))
    assert mdp_upper(b, rocksample) == pytest.approx(9.5)


def test_mdp_upper_collects_good_rock(rocksample):
    b = WeightedParticleSet.uniform(_rock_state(0, 0, True))
    assert mdp_upper(b, rocksample) == pytest.approx(10 + 10 * 0.95**5)


def test_mdp_upper_averages_particles(rocksample):
    states = np.vstack([_rock_state(3, 2, False), _rock_state(0, 0, True)])
    b = WeightedParticleSet(states, [3.0, 1.0])
    expected = 0.75 * 9.5 + 0.25 * (10 + 10 * 0.95**5)
    assert mdp_upper(b, rocksample) == pytest.approx(expected)


def test_mdp_upper_unsupported():
    b = WeightedParticleSet.uniform(np.zeros((2, 1)))
    with pytest.raises(UnsupportedBound):
        mdp_upper(b, BanditModel())


def test_particle_bounds_take_best_row():
    bounds = ParticleBounds(np.array([[1.0, 3.0], [2.0, 0.0]]), np.array([[5.0, 5.0]]))
    assert bounds.evaluate(np.array([1.0, 1.0])) == (2.0, 5.0)
    assert bounds.evaluate(np.array([0.0, 1.0])) == (3.0, 5.0)


def test_particle_bounds_raise_upper_to_lower():
    bounds = ParticleBounds(np.array([[4.0, 4.0]]), np.array([[1.0, 1.0]]))
    assert bounds.evaluate(np.ones(2)) == (4.0, 4.0)


def test_particle_bounds_zero_weight():
    bounds = ParticleBounds(np.zeros((1, 2)), np.zeros((1, 2)))
    with pytest.raises(ZeroTotalWeight):
        bounds.evaluate(np.zeros(2))


def test_terminal_particles_are_worth_zero(rng):
    init = BoundInitializer.fixed(-11.0, 11.0)
    b = WeightedParticleSet.uniform(np.array([[0.0, 0.0], [0.0, 1.0]]))
    assert init.bounds(b, LightDark(), rng) == (-5.5, 5.5)


def test_from_config_builds_estimators():
    cfg = BoundsConfig.from_dict(
        {
            "lower": {"kind": "rollout", "horizon": 30, "actions": [2]},
            "upper": {"kind": "mdp"},
        }
    )
    init = BoundInitializer.from_config(cfg)
    assert isinstance(init.lower, FixedActionRollout)
    assert (init.lower.horizon, init.lower.actions) == (30, [2])
    assert isinstance(init.upper, MdpApprox)
    assert cfg.to_dict() == {
        "lower": {"kind": "rollout", "horizon": 30, "actions": [2]},
        "upper": {"kind": "mdp"},
    }


def test_from_config_fixed_pair():
    init = BoundInitializer.from_config(BoundsConfig.fixed(-20.0, 0.0))
    assert isinstance(init.lower, FixedValue) and init.lower.value == -20.0
    assert isinstance(init.upper, FixedValue) and init.upper.value == 0.0


@pytest.mark.parametrize(
    "cfg,error",
    [
        (BoundsConfig.fixed(5.0, 1.0), InvalidBounds),
        (BoundsConfig(BoundSpec(BoundKind.FIXED), BoundSpec(BoundKind.MDP)), InvalidBounds),
    ],
)
def test_from_config_invalid(cfg, error):
    with pytest.raises(error):
        BoundInitializer.from_config(cfg)


def test_unknown_bound_kind():
    with pytest.raises(ValueError):
        BoundsConfig.from_dict({"lower": {"kind": "oracle"}})


def test_default_bounds_config():
    cfg = BoundsConfig()
    assert (cfg.lower.value, cfg.upper.value) == (-11.0, 11.0)

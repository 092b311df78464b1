from pathlib import Path

import numpy as np
import pytest
from scipy.stats import norm

from airoas.bounds import BoundInitializer
from airoas.constants import SolverName
from airoas.core.particles import WeightedParticleSet
from airoas.domains.registry import build_model
from airoas.harness import ExperimentConfig, run_ablation_sweep

CONFIG_DIR = Path(__file__).resolve().parents[2] / "configs"
LIGHTDARK_CONFIGS = [
    "lightdark_alpha1.yaml",
    "lightdark_alpha05.yaml",
    "lightdark_alpha1_desk.yaml",
]


@pytest.mark.parametrize("path", sorted(CONFIG_DIR.glob("*.yaml")), ids=lambda p: p.stem)
def test_shipped_configs_build_their_domain(path):
    cfg = ExperimentConfig.from_yaml(path)
    model = build_model(cfg.domain, cfg.domain_params)
    assert model.name == str(cfg.domain)


@pytest.mark.parametrize("name", LIGHTDARK_CONFIGS)
def test_lightdark_benchmarks_use_the_standard_constants(name):
    cfg = ExperimentConfig.from_yaml(CONFIG_DIR / name)
    model = build_model(cfg.domain, cfg.domain_params)
    assert model.params.light_position == 5.0
    assert model.params.move_reward == 0.0
    assert model.noise_std(np.array([5.0]))[0] == pytest.approx(0.01)


def test_lightdark_initial_bounds_bracket_declaring_now(rng):
    """The lower bound is the value of declaring at once under the N(2, 3) prior."""
    cfg = ExperimentConfig.from_yaml(CONFIG_DIR / "lightdark_alpha1.yaml")
    model = build_model(cfg.domain, cfg.domain_params)
    belief = WeightedParticleSet.uniform(model.initial_states(20_000, rng))
    lower, upper = BoundInitializer.from_config(cfg.planner.bounds).bounds(belief, model, rng)

    in_goal = norm.cdf(1.0, loc=2.0, scale=3.0) - norm.cdf(-1.0, loc=2.0, scale=3.0)
    assert lower == pytest.approx(20.0 * in_goal - 10.0, abs=0.2)
    assert lower < 0.0 < upper <= 10.0


@pytest.mark.slow
def test_lightdark_desk_ablation(tmp_path):
    """Both solvers move before declaring, and AIR is not worse than the bootstrap update."""
    cfg = ExperimentConfig.from_yaml(CONFIG_DIR / "lightdark_alpha1_desk.yaml")
    table = run_ablation_sweep(cfg, output_dir=tmp_path).set_index(["solver", "particles"])

    assert (table["mean_steps"] > 1.0).all()
    for count in cfg.particle_counts:
        air = table.loc[(str(SolverName.AIROAS), count)]
        bootstrap = table.loc[(str(SolverName.NO_AIR), count)]
        tolerance = 2.0 * np.hypot(air["sem"], bootstrap["sem"])
        assert air["mean_return"] >= bootstrap["mean_return"] - tolerance
    assert table.loc[(str(SolverName.AIROAS), max(cfg.particle_counts)), "mean_return"] > 0.0

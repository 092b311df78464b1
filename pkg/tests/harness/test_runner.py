import json
from dataclasses import replace
from unittest import mock

import pandas as pd
import pytest

from airoas.constants import SolverName
from airoas.exceptions import AiroasError, ZeroTotalWeight
from airoas.harness import (
    EpisodeError,
    ExperimentConfig,
    RootUpdate,
    episode_seeds,
    format_episode,
    run_ablation_sweep,
    run_episode,
    run_episodes,
    run_experiment,
    run_r_star_sweep,
    summarize,
)
from airoas.domains.lightdark import DECLARE
from airoas.harness.results import EPISODES_FILE, SUMMARY_FILE, read_episodes, write_episodes
from airoas.utils.seeding import derive_seed


@pytest.fixture
def cfg(tmp_path):
    return ExperimentConfig.from_dict(
        {
            "name": "smoke",
            "domain": {"name": "lightdark"},
            "planner": {"particles": 30, "max_trials": 5, "time_budget": 60.0, "max_depth": 10},
            "air": {"k": 10},
            "episodes": 2,
            "max_steps": 3,
            "output_dir": str(tmp_path / "out"),
        }
    )


def _comparable(result):
    data = result.to_dict()
    data.pop("wall_time")
    return data


def test_episode_seeds():
    assert episode_seeds(4, 3) == [derive_seed(4, 0), derive_seed(4, 1), derive_seed(4, 2)]
    assert episode_seeds(4, 2) == episode_seeds(4, 3)[:2]


def test_zero_step_episode():
    result = run_episode(ExperimentConfig.from_dict({"max_steps": 0}), 1)
    assert (result.steps, result.discounted_return, result.log) == (0, 0.0, [])


def test_episode_log(cfg):
    result = run_episode(cfg, 11, episode_index=4)
    assert result.episode == 4
    assert result.seed == 11
    assert 1 <= result.steps <= 3
    assert [record.step for record in result.log] == list(range(result.steps))
    assert result.discounted_return == pytest.approx(result.recompute_return())
    for record in result.log:
        assert record.lower <= record.upper
        assert record.action_name in {"left", "right", "declare"}
        assert record.trials <= 5


def test_episode_is_reproducible_with_a_trial_cap(cfg):
    assert _comparable(run_episode(cfg, 11)) == _comparable(run_episode(cfg, 11))


def test_root_air_update(cfg):
    result = run_episode(replace(cfg, root_update=RootUpdate.AIR), 11)
    assert result.steps >= 1


def test_collapsed_belief_is_redrawn(cfg):
    with mock.patch(
        "airoas.harness.runner.sir_update", side_effect=ZeroTotalWeight(30, "impossible")
    ):
        result = run_episode(cfg, 11)
    assert result.belief_resets == result.steps
    assert all(record.belief_reset for record in result.log)


def test_failed_episode_reports_its_seed(cfg):
    with mock.patch("airoas.harness.runner.run_episode", side_effect=RuntimeError("boom")):
        with pytest.raises(EpisodeError) as exc_info:
            run_episodes(cfg)
    assert exc_info.value.episode_index == 0
    assert exc_info.value.seed == derive_seed(cfg.master_seed, 0)
    assert "boom" in exc_info.value.message


def test_run_episodes_in_order(cfg):
    results = run_episodes(cfg)
    assert [r.episode for r in results] == [0, 1]
    assert [r.seed for r in results] == episode_seeds(cfg.master_seed, 2)


def test_run_experiment_writes_records(cfg):
    summary = run_experiment(cfg)
    out = cfg.output_dir
    assert (out / "config.yaml").exists()
    records = read_episodes(out / EPISODES_FILE)
    assert len(records) == 2
    written = pd.read_csv(out / SUMMARY_FILE)
    assert len(summary) == len(written) == 1
    assert written["mean_return"].iloc[0] == pytest.approx(
        sum(r.discounted_return for r in records) / 2
    )
    assert written["max_trials"].iloc[0] == 5
    assert ExperimentConfig.from_yaml(out / "config.yaml").to_dict() == cfg.to_dict()


def test_summarize_recomputes_statistics(cfg):
    summary = run_experiment(cfg)
    table = summarize(cfg.output_dir)
    assert table["mean_return"].iloc[0] == pytest.approx(summary["mean_return"].iloc[0])
    assert table["episodes"].iloc[0] == 2


def test_summarize_without_records(tmp_path):
    with pytest.raises(AiroasError):
        summarize(tmp_path)


def _fake_experiment(cell, out):
    return pd.DataFrame(
        [
            {
                "solver": str(cell.solver),
                "particles": cell.planner.particles,
                "r_star": cell.planner.air.r_star,
                "mean_return": cell.planner.air.r_star * (cell.solver is SolverName.AIROAS),
                "sem": 0.0,
            }
        ]
    )


def test_ablation_sweep_runs_both_solvers(cfg, tmp_path):
    with mock.patch(
        "airoas.harness.runner.run_experiment", side_effect=_fake_experiment
    ) as run:
        table = run_ablation_sweep(cfg, [10, 20], tmp_path)
    assert [c.args[1].name for c in run.call_args_list] == [
        "airoas_m10",
        "no_air_m10",
        "airoas_m20",
        "no_air_m20",
    ]
    assert list(table["particles"]) == [10, 10, 20, 20]
    assert (tmp_path / "ablation.csv").exists()


def test_r_star_sweep(cfg, tmp_path):
    with mock.patch(
        "airoas.harness.runner.run_experiment", side_effect=_fake_experiment
    ) as run:
        table = run_r_star_sweep(cfg, [2.0, 5.0], tmp_path)
    assert [c.args[1].name for c in run.call_args_list] == ["r_star_2", "r_star_5"]
    assert all(c.args[0].solver is SolverName.AIROAS for c in run.call_args_list)
    assert list(table["r_star"]) == [2.0, 5.0]
    assert (tmp_path / "r_star.csv").exists()


def test_format_episode(cfg):
    result = run_episode(cfg, 11)
    text = format_episode(result)
    lines = text.splitlines()
    assert lines[0].startswith("episode 0 seed 11 lightdark/airoas")
    assert len(lines) == result.steps + 2
    assert "return" in lines[-1]


def test_declared_episode_is_written_as_strict_json(cfg, tmp_path):
    """Declaring ends the episode with LightDark's infinite terminal observation."""
    plan = mock.Mock(action=DECLARE, lower=-1.0, upper=1.0, trials=1)
    with mock.patch("airoas.harness.runner.Planner") as planner:
        planner.return_value.search.return_value = plan
        result = run_episode(cfg, 11)
    assert result.steps == 1
    assert result.log[0].observation_key == ["inf"]
    assert "obs=(inf)" in format_episode(result)

    path = tmp_path / EPISODES_FILE
    write_episodes(path, [result])

    def reject(constant):
        raise ValueError(constant)

    json.loads(path.read_text(), parse_constant=reject)
    assert read_episodes(path)[0].log[0].observation_key == ["inf"]

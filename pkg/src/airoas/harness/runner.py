import logging
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..baseline.sir import air_update, sir_update
from ..constants import SolverName
from ..core.model import Action, PomdpModel
from ..core.particles import WeightedParticleSet
from ..domains.registry import build_model
from ..exceptions import AiroasError, ZeroTotalWeight
from ..tree.planner import Planner
from ..utils.seeding import child_rngs, derive_seed, make_rng
from .config import ExperimentConfig, RootUpdate
from .exceptions import BeliefCollapse, EpisodeError
from .results import (
    EPISODES_FILE,
    SUMMARY_FILE,
    EpisodeResult,
    StepRecord,
    json_observation_key,
    read_episodes,
    summarize_records,
    summary_row,
    write_episodes,
    write_summary,
)

logger = logging.getLogger(__name__)

ABLATION_FILE = "ablation.csv"
TUNING_FILE = "r_star.csv"
CONFIG_FILE = "config.yaml"


def episode_seeds(master_seed: int, episodes: int) -> list[int]:
    return [derive_seed(master_seed, i) for i in range(episodes)]


def _initial_belief(
    model: PomdpModel, particles: int, rng: np.random.Generator
) -> WeightedParticleSet:
    return WeightedParticleSet.uniform(model.initial_states(particles, rng))


def _update_belief(
    cfg: ExperimentConfig,
    belief: WeightedParticleSet,
    a: Action,
    o,
    model: PomdpModel,
    rng: np.random.Generator,
    step: int,
) -> WeightedParticleSet:
    try:
        if cfg.root_update is RootUpdate.AIR:
            return air_update(belief, a, o, model, cfg.planner.air, rng)
        return sir_update(belief, a, o, model, cfg.sir, rng)
    except ZeroTotalWeight as e:
        raise BeliefCollapse(step, str(e)) from e


def run_episode(
    cfg: ExperimentConfig,
    episode_seed: int,
    episode_index: int = 0,
    model: Optional[PomdpModel] = None,
) -> EpisodeResult:
    """
    Run one episode against a ground-truth simulation.

    At every step the planner picks an action from the current root belief,
    the true state is advanced, and the belief is updated with the executed
    action and the received observation. When the observation is impossible
    under the whole belief, the belief is redrawn from the initial
    distribution and the episode continues.

    Args:
        cfg (ExperimentConfig): Experiment settings.
        episode_seed (int): Seed of every random stream of the episode.
        episode_index (int): Position of the episode in the experiment.
        model (Optional[PomdpModel]): Prebuilt domain; built from ``cfg`` when None.

    Returns:
        EpisodeResult: The episode log and its discounted return.
    """
    start = time.perf_counter()
    model = model if model is not None else build_model(cfg.domain, cfg.domain_params)
    env_rng, belief_rng, plan_rng = child_rngs(make_rng(episode_seed), 3)
    planner = Planner(
        model, cfg.planner, plan_rng, air_enabled=cfg.solver is SolverName.AIROAS
    )

    state = model.initial_states(1, env_rng)
    belief = _initial_belief(model, cfg.planner.particles, belief_rng)
    log: list[StepRecord] = []
    logger.info(f"Episode {episode_index} (seed {episode_seed}) started on {model.name}")

    for t in range(cfg.max_steps):
        if model.is_terminal(state)[0]:
            break
        plan = planner.search(belief)
        outcome = model.step(state, plan.action, env_rng)
        state = outcome.states
        observation = outcome.observations[0]

        reset = False
        try:
            belief = _update_belief(cfg, belief, plan.action, observation, model, belief_rng, t)
        except BeliefCollapse as e:
            logger.warning(f"Belief collapsed, redrawing it from the initial distribution: {e}")
            belief = _initial_belief(model, cfg.planner.particles, belief_rng)
            reset = True

        log.append(
            StepRecord(
                step=t,
                action=int(plan.action),
                action_name=model.action_name(plan.action),
                observation_key=json_observation_key(model.obs_key(observation)),
                reward=float(outcome.rewards[0]),
                lower=plan.lower,
                upper=plan.upper,
                trials=plan.trials,
                belief_reset=reset,
            )
        )

    result = EpisodeResult(
        episode=episode_index,
        seed=episode_seed,
        discounted_return=0.0,
        steps=len(log),
        wall_time=time.perf_counter() - start,
        discount=model.discount(),
        name=cfg.name,
        domain=str(cfg.domain),
        solver=str(cfg.solver),
        particles=cfg.planner.particles,
        r_star=cfg.planner.air.r_star,
        log=log,
    )
    result.discounted_return = result.recompute_return()
    logger.info(
        f"Episode {episode_index} finished after {result.steps} steps "
        f"with return {result.discounted_return:.3f}"
    )
    return result


def _run_indexed(cfg: ExperimentConfig, index: int, seed: int) -> EpisodeResult:
    try:
        return run_episode(cfg, seed, index)
    except EpisodeError:
        raise
    except Exception as e:
        logger.error(f"Episode {index} failed: {e}", exc_info=True)
        raise EpisodeError(index, seed, str(e)) from e


def run_episodes(cfg: ExperimentConfig) -> list[EpisodeResult]:
    """
    Run every episode of ``cfg``, in parallel when ``cfg.workers > 1``.

    Results are ordered by episode index whatever the worker count.

    Raises:
        EpisodeError: If any episode fails.
    """
    seeds = episode_seeds(cfg.master_seed, cfg.episodes)
    if cfg.workers == 1:
        return [_run_indexed(cfg, i, seed) for i, seed in enumerate(seeds)]

    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        futures = [pool.submit(_run_indexed, cfg, i, seed) for i, seed in enumerate(seeds)]
        return [future.result() for future in futures]


def _output_dir(path: Union[str, Path]) -> Path:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _config_columns(cfg: ExperimentConfig) -> dict:
    return {
        "time_budget": cfg.planner.time_budget,
        "max_trials": cfg.planner.max_trials,
        "max_depth": cfg.planner.max_depth,
        "xi": cfg.planner.xi,
        "k": cfg.planner.air.schedule.k,
        "max_steps": cfg.max_steps,
        "master_seed": cfg.master_seed,
        "root_update": str(cfg.root_update),
    }


def run_experiment(
    cfg: ExperimentConfig, output_dir: Optional[Union[str, Path]] = None
) -> pd.DataFrame:
    """
    Run all episodes of a configuration and write its records.

    Writes ``episodes.jsonl`` (one record per episode), ``summary.csv``
    (one row) and the resolved ``config.yaml`` to the output directory.

    Returns:
        pd.DataFrame: The summary table.

    Raises:
        EpisodeError: If any episode fails.
    """
    out = _output_dir(output_dir if output_dir is not None else cfg.output_dir)
    logger.info(
        f"Running {cfg.episodes} episodes of {cfg.name} ({cfg.solver}, "
        f"{cfg.planner.particles} particles) into {out}"
    )
    results = run_episodes(cfg)
    cfg.to_yaml(out / CONFIG_FILE)
    write_episodes(out / EPISODES_FILE, results)
    summary = write_summary(
        out / SUMMARY_FILE, [summary_row(results, **_config_columns(cfg))]
    )
    logger.info(
        f"{cfg.name}: mean return {summary['mean_return'].iloc[0]:.3f} "
        f"+/- {summary['sem'].iloc[0]:.3f}"
    )
    return summary


def run_ablation_sweep(
    cfg: ExperimentConfig,
    particle_counts: Optional[Sequence[int]] = None,
    output_dir: Optional[Union[str, Path]] = None,
) -> pd.DataFrame:
    """
    Run both solvers at every particle count.

    Every cell uses the same master seed, so the two solvers face the same
    episode seeds. Cells are written to ``<solver>_m<count>/`` and the tidy
    table to ``ablation.csv``.

    Returns:
        pd.DataFrame: One row per (solver, particle count).
    """
    counts = list(particle_counts if particle_counts is not None else cfg.particle_counts)
    out = _output_dir(output_dir if output_dir is not None else cfg.output_dir)
    frames = []
    for count in counts:
        for solver in (SolverName.AIROAS, SolverName.NO_AIR):
            cell = cfg.with_overrides(particles=count, solver=solver)
            frames.append(run_experiment(cell, out / f"{solver}_m{count}"))
    table = pd.concat(frames, ignore_index=True)
    table.to_csv(out / ABLATION_FILE, index=False)
    return table


def run_r_star_sweep(
    cfg: ExperimentConfig,
    grid: Optional[Sequence[float]] = None,
    output_dir: Optional[Union[str, Path]] = None,
) -> pd.DataFrame:
    """
    Run the annealed solver once per target inefficiency in ``grid``.

    Returns:
        pd.DataFrame: One row per r* value, written to ``r_star.csv``.
    """
    values = list(grid if grid is not None else cfg.r_star_grid)
    out = _output_dir(output_dir if output_dir is not None else cfg.output_dir)
    frames = []
    for r_star in values:
        cell = cfg.with_overrides(r_star=r_star, solver=SolverName.AIROAS)
        frames.append(run_experiment(cell, out / f"r_star_{r_star:g}"))
    table = pd.concat(frames, ignore_index=True)
    table.to_csv(out / TUNING_FILE, index=False)
    best = table.loc[table["mean_return"].idxmax()]
    logger.info(f"Best r* = {best['r_star']:g} with mean return {best['mean_return']:.3f}")
    return table


def summarize(input_dir: Union[str, Path]) -> pd.DataFrame:
    """
    Recompute summary statistics from every ``episodes.jsonl`` under ``input_dir``.

    Raises:
        AiroasError: If no episode records are found.
    """
    input_dir = Path(input_dir)
    paths = sorted(input_dir.rglob(EPISODES_FILE))
    if not paths:
        raise AiroasError(f"no {EPISODES_FILE} under {input_dir}")
    frames = [summarize_records(read_episodes(path)) for path in paths]
    return pd.concat(frames, ignore_index=True)


def format_episode(result: EpisodeResult) -> str:
    """Plain-text trace of an episode, one line per step."""
    lines = [
        f"episode {result.episode} seed {result.seed} {result.domain}/{result.solver}"
    ]
    for record in result.log:
        key = ", ".join(v if isinstance(v, str) else f"{v:g}" for v in record.observation_key)
        marker = "  belief reset" if record.belief_reset else ""
        lines.append(
            f"  t={record.step:3d}  {record.action_name:<8} obs=({key})  "
            f"r={record.reward:+.2f}  bounds=[{record.lower:.3f}, {record.upper:.3f}]  "
            f"trials={record.trials}{marker}"
        )
    lines.append(
        f"  return {result.discounted_return:.4f} in {result.steps} steps "
        f"({result.wall_time:.2f}s)"
    )
    return "\n".join(lines)

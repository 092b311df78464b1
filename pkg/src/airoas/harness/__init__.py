from .config import ExperimentConfig, RootUpdate
from .exceptions import BeliefCollapse, ConfigError, EpisodeError
from .plotting import plot_ablation
from .results import EpisodeResult, StepRecord, standard_error, summary_row
from .runner import (
    episode_seeds,
    format_episode,
    run_ablation_sweep,
    run_episode,
    run_episodes,
    run_experiment,
    run_r_star_sweep,
    summarize,
)

__all__ = [
    "BeliefCollapse",
    "ConfigError",
    "EpisodeError",
    "EpisodeResult",
    "ExperimentConfig",
    "RootUpdate",
    "StepRecord",
    "episode_seeds",
    "format_episode",
    "plot_ablation",
    "run_ablation_sweep",
    "run_episode",
    "run_episodes",
    "run_experiment",
    "run_r_star_sweep",
    "standard_error",
    "summarize",
    "summary_row",
]

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import pandas as pd

from ..exceptions import AiroasError
from ..utils.validation import parse_count_list, parse_float_list
from .config import ExperimentConfig
from .exceptions import ConfigError, EpisodeError
from .plotting import plot_ablation
from .results import EPISODES_FILE, read_episodes
from .runner import (
    ABLATION_FILE,
    format_episode,
    run_ablation_sweep,
    run_experiment,
    run_r_star_sweep,
    summarize,
)

logger = logging.getLogger(__name__)


def _add_config_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--config", required=True, help="Path to the YAML experiment file.")
    parser.add_argument("--seed", type=int, help="Master seed override.")
    parser.add_argument("--episodes", type=int, help="Episode count override.")
    parser.add_argument("--out", help="Output directory override.")
    parser.add_argument("--time-budget", type=float, help="Seconds per decision.")
    parser.add_argument("--max-trials", type=int, help="Trial cap per decision.")
    parser.add_argument("--workers", type=int, help="Episodes run in parallel.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="airoas",
        description="Run online POMDP planning benchmarks with annealed importance resampling.",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging verbosity.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run the episodes of one configuration.")
    _add_config_arguments(run)
    run.add_argument("--particles", type=int, help="Root particle count override.")
    run.add_argument("--trace", action="store_true", help="Print a step-by-step trace.")

    ablate = commands.add_parser("ablate", help="Compare both solvers across particle counts.")
    _add_config_arguments(ablate)
    ablate.add_argument("--particles", help="Comma-separated particle counts, e.g. 100,2000.")

    tune = commands.add_parser("tune", help="Sweep the target inefficiency r*.")
    _add_config_arguments(tune)
    tune.add_argument("--grid", help="Comma-separated r* values, e.g. 2,3,5,10.")

    summary = commands.add_parser("summarize", help="Recompute statistics from episode records.")
    summary.add_argument("--in", dest="input_dir", required=True, help="Results directory.")

    plot = commands.add_parser("plot", help="Chart the ablation results.")
    plot.add_argument("--in", dest="input_dir", required=True, help="Results directory.")
    plot.add_argument("--out", required=True, help="Image file to write.")
    return parser


def _load(args: argparse.Namespace, particles: Optional[int] = None) -> ExperimentConfig:
    cfg = ExperimentConfig.from_yaml(args.config)
    return cfg.with_overrides(
        seed=args.seed,
        episodes=args.episodes,
        output_dir=args.out,
        particles=particles,
        time_budget=args.time_budget,
        max_trials=args.max_trials,
        workers=args.workers,
    )


def _print_table(table: pd.DataFrame):
    print(table.to_string(index=False))


def _run(args: argparse.Namespace):
    cfg = _load(args, particles=args.particles)
    _print_table(run_experiment(cfg))
    if args.trace:
        for result in read_episodes(Path(cfg.output_dir) / EPISODES_FILE):
            print(format_episode(result))


def _ablate(args: argparse.Namespace):
    cfg = _load(args)
    counts = parse_count_list(args.particles) if args.particles else None
    _print_table(run_ablation_sweep(cfg, counts))


def _tune(args: argparse.Namespace):
    cfg = _load(args)
    grid = parse_float_list(args.grid) if args.grid else None
    _print_table(run_r_star_sweep(cfg, grid))


def _summarize(args: argparse.Namespace):
    _print_table(summarize(args.input_dir))


def _plot(args: argparse.Namespace):
    ablation = Path(args.input_dir) / ABLATION_FILE
    table = pd.read_csv(ablation) if ablation.exists() else summarize(args.input_dir)
    plot_ablation(table, args.out)


COMMANDS = {
    "run": _run,
    "ablate": _ablate,
    "tune": _tune,
    "summarize": _summarize,
    "plot": _plot,
}


def error_record(error: Exception) -> dict:
    """Machine-readable description of a failure."""
    context = {}
    if isinstance(error, EpisodeError):
        context = {"episode_index": error.episode_index, "seed": error.seed}
    elif isinstance(error, ConfigError):
        context = {"source": error.source}
    return {"error": type(error).__name__, "message": str(error), "context": context}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the ``airoas`` command.

    Returns:
        int: 0 on success, 1 on failure; argument errors exit with 2.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        COMMANDS[args.command](args)
    except (AiroasError, OSError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(json.dumps(error_record(e)), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

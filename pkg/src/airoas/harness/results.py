import json
import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

EPISODES_FILE = "episodes.jsonl"
SUMMARY_FILE = "summary.csv"

GROUP_COLUMNS = ["name", "domain", "solver", "particles", "r_star"]


@dataclass
class StepRecord:
    """
    One executed decision.

    Attributes:
        step (int): Time step t.
        action (int): Executed action.
        action_name (str): Readable action name.
        observation_key (list): Grouping key of the received observation, non-finite
            entries written as strings.
        reward (float): Reward r_t.
        lower (float): Root lower bound when the action was chosen.
        upper (float): Root upper bound when the action was chosen.
        trials (int): Search trials spent on the decision.
        belief_reset (bool): Whether the root belief had to be reinitialised.
    """

    step: int
    action: int
    action_name: str
    observation_key: list
    reward: float
    lower: float
    upper: float
    trials: int
    belief_reset: bool = False


@dataclass
class EpisodeResult:
    """
    Outcome of one episode.

    Attributes:
        episode (int): Index in the experiment.
        seed (int): Episode seed.
        discounted_return (float): Sum of gamma ** t * r_t over the log.
        steps (int): Executed steps.
        wall_time (float): Seconds spent on the episode.
        discount (float): Discount factor of the domain.
        name (str): Experiment label.
        domain (str): Domain name.
        solver (str): Planner variant.
        particles (int): Root particle count.
        r_star (float): Target inefficiency.
        log (list[StepRecord]): Per-step records.
    """

    episode: int
    seed: int
    discounted_return: float
    steps: int
    wall_time: float
    discount: float
    name: str = ""
    domain: str = ""
    solver: str = ""
    particles: int = 0
    r_star: float = 0.0
    log: list[StepRecord] = field(default_factory=list)

    @property
    def belief_resets(self) -> int:
        return sum(record.belief_reset for record in self.log)

    def recompute_return(self) -> float:
        """Discounted return recomputed from the logged rewards."""
        return float(
            sum(self.discount**record.step * record.reward for record in self.log)
        )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "EpisodeResult":
        data = dict(data)
        data["log"] = [StepRecord(**record) for record in data.get("log", [])]
        return cls(**data)


def json_observation_key(key) -> list:
    """Observation key with non-finite numbers spelled as strings such as ``"inf"``."""
    return [
        str(v) if isinstance(v, float) and not math.isfinite(v) else v
        for v in np.atleast_1d(key).tolist()
    ]


def standard_error(values: Iterable[float]) -> tuple[float, bool]:
    """
    Standard error of the mean, stdev / sqrt(n) with the n - 1 estimator.

    Returns:
        tuple[float, bool]: (sem, defined); a single value yields (0.0, False).
    """
    values = np.asarray(list(values), dtype=float)
    if len(values) < 2:
        return 0.0, False
    return float(values.std(ddof=1) / math.sqrt(len(values))), True


def summary_row(results: list[EpisodeResult], **extra) -> dict:
    """
    Aggregate episode results into one summary row.

    Args:
        results (list[EpisodeResult]): Episodes of one configuration.
        **extra: Additional columns, copied verbatim.
    """
    returns = [r.discounted_return for r in results]
    wall_times = [r.wall_time for r in results]
    sem, defined = standard_error(returns)
    first = results[0]
    row = {
        "name": first.name,
        "domain": first.domain,
        "solver": first.solver,
        "particles": first.particles,
        "r_star": first.r_star,
        "episodes": len(results),
        "mean_return": float(np.mean(returns)),
        "sem": sem,
        "sem_defined": defined,
        "median_return": float(np.median(returns)),
        "mean_steps": float(np.mean([r.steps for r in results])),
        "belief_resets": int(sum(r.belief_resets for r in results)),
        "mean_wall_time": float(np.mean(wall_times)),
        "median_wall_time": float(np.median(wall_times)),
        "max_wall_time": float(np.max(wall_times)),
    }
    row.update(extra)
    return row


def write_episodes(path: Union[str, Path], results: list[EpisodeResult]):
    """Write one JSON record per line."""
    with open(path, "w") as f:
        for result in results:
            f.write(json.dumps(result.to_dict(), allow_nan=False) + "\n")
    logger.debug(f"Wrote {len(results)} episode records to {path}")


def read_episodes(path: Union[str, Path]) -> list[EpisodeResult]:
    with open(path) as f:
        return [EpisodeResult.from_dict(json.loads(line)) for line in f if line.strip()]


def write_summary(path: Union[str, Path], rows: list[dict]) -> pd.DataFrame:
    frame = pd.DataFrame(rows)
    frame.to_csv(path, index=False)
    return frame


def summarize_records(
    results: list[EpisodeResult], extra: Optional[dict] = None
) -> pd.DataFrame:
    """
    Recompute summary rows from episode records, one row per configuration.
    """
    groups: dict[tuple, list[EpisodeResult]] = {}
    for result in sorted(results, key=lambda r: r.episode):
        key = tuple(getattr(result, column) for column in GROUP_COLUMNS)
        groups.setdefault(key, []).append(result)
    rows = [summary_row(group, **(extra or {})) for group in groups.values()]
    return pd.DataFrame(rows)

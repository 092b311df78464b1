import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Union

import yaml

from ..air.config import AirConfig
from ..air.schedule import tempering_schedule
from ..baseline.config import SirConfig
from ..bounds.config import BoundsConfig
from ..constants import (
    ABLATION_PARTICLE_COUNTS,
    DEFAULT_TEMPERING_STEPS,
    R_STAR_GRID,
    DomainName,
    SolverName,
)
from ..exceptions import AiroasError
from ..tree.config import PlannerConfig
from .exceptions import ConfigError

logger = logging.getLogger(__name__)

TOP_LEVEL_KEYS = {
    "name",
    "domain",
    "solver",
    "planner",
    "air",
    "bounds",
    "sir",
    "episodes",
    "max_steps",
    "master_seed",
    "workers",
    "output_dir",
    "particle_counts",
    "r_star_grid",
}


class RootUpdate(Enum):
    """
    How the root belief follows the executed action and received observation.
    """

    SIR = "sir"
    """Bootstrap reweighting with ESS-triggered resampling"""
    AIR = "air"
    """One annealed importance resampling pass"""

    def __str__(self):
        return self.value


@dataclass
class ExperimentConfig:
    """
    Everything needed to reproduce a benchmark run.

    Attributes:
        name (str): Label used in summaries.
        domain (DomainName): Benchmark domain.
        domain_params (dict): Domain parameter overrides.
        solver (SolverName): Planner variant.
        planner (PlannerConfig): Search settings, including AIR and bounds.
        sir (SirConfig): Root belief filter settings.
        root_update (RootUpdate): Root belief update rule.
        episodes (int): Number of episodes.
        max_steps (int): Step cap per episode.
        master_seed (int): Seed every episode seed is derived from.
        workers (int): Episodes run in parallel.
        output_dir (Path): Where records and summaries are written.
        particle_counts (tuple[int, ...]): Particle counts of the ablation sweep.
        r_star_grid (tuple[float, ...]): Target inefficiencies of the tuning sweep.
    """

    name: str = "experiment"
    domain: DomainName = DomainName.LIGHTDARK
    domain_params: dict = field(default_factory=dict)
    solver: SolverName = SolverName.AIROAS
    planner: PlannerConfig = field(default_factory=PlannerConfig)
    sir: SirConfig = field(default_factory=SirConfig)
    root_update: RootUpdate = RootUpdate.SIR
    episodes: int = 1
    max_steps: int = 100
    master_seed: int = 0
    workers: int = 1
    output_dir: Path = Path("results")
    particle_counts: tuple = ABLATION_PARTICLE_COUNTS
    r_star_grid: tuple = R_STAR_GRID

    def validate(self) -> "ExperimentConfig":
        """
        Raises:
            ConfigError: If any field violates its invariants.
        """
        if self.episodes < 1:
            raise ConfigError("episodes", f"must be >= 1, got {self.episodes}")
        if self.max_steps < 0:
            raise ConfigError("max_steps", f"must be >= 0, got {self.max_steps}")
        if self.workers < 1:
            raise ConfigError("workers", f"must be >= 1, got {self.workers}")
        try:
            self.planner.validate()
            self.sir.validate()
        except AiroasError as e:
            raise ConfigError(self.name, str(e)) from e
        return self

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "ExperimentConfig":
        """
        Load a configuration file.

        Raises:
            ConfigError: If the file does not exist, is not valid YAML or has
                an invalid schema.
        """
        path = Path(path)
        if not path.exists():
            raise ConfigError(str(path), "file not found")
        try:
            with open(path) as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(str(path), f"invalid YAML: {e}") from e
        logger.debug(f"Loaded config from {path}")
        data.setdefault("name", path.stem)
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        """
        Build a configuration from the nested YAML schema.

        Raises:
            ConfigError: On unknown keys or invalid values.
        """
        if not isinstance(data, dict):
            raise ConfigError("<root>", "expected a mapping")
        unknown = set(data) - TOP_LEVEL_KEYS
        if unknown:
            raise ConfigError("<root>", f"unknown keys: {', '.join(sorted(unknown))}")

        try:
            domain = data.get("domain", {})
            planner = dict(data.get("planner", {}))
            air = dict(data.get("air", {}))
            sir = dict(data.get("sir", {}))

            k = int(air.pop("k", DEFAULT_TEMPERING_STEPS))
            air_cfg = AirConfig(schedule=tempering_schedule(k), **air)
            planner_cfg = PlannerConfig(
                air=air_cfg,
                bounds=BoundsConfig.from_dict(data.get("bounds", {})),
                **planner,
            )
            root_update = RootUpdate(sir.pop("root_update", "sir"))

            cfg = cls(
                name=str(data.get("name", "experiment")),
                domain=DomainName(domain.get("name", "lightdark")),
                domain_params=dict(domain.get("params") or {}),
                solver=SolverName(data.get("solver", "airoas")),
                planner=planner_cfg,
                sir=SirConfig(**sir),
                root_update=root_update,
                episodes=int(data.get("episodes", 1)),
                max_steps=int(data.get("max_steps", 100)),
                master_seed=int(data.get("master_seed", 0)),
                workers=int(data.get("workers", 1)),
                output_dir=Path(data.get("output_dir", "results")),
                particle_counts=tuple(
                    int(n) for n in data.get("particle_counts", ABLATION_PARTICLE_COUNTS)
                ),
                r_star_grid=tuple(float(r) for r in data.get("r_star_grid", R_STAR_GRID)),
            )
        except ConfigError:
            raise
        except (TypeError, ValueError, AiroasError) as e:
            raise ConfigError(str(data.get("name", "<root>")), str(e)) from e
        return cfg.validate()

    def to_dict(self) -> dict[str, Any]:
        """Nested representation matching the YAML schema."""
        planner = self.planner
        return {
            "name": self.name,
            "domain": {"name": str(self.domain), "params": dict(self.domain_params)},
            "solver": str(self.solver),
            "planner": {
                "max_depth": planner.max_depth,
                "time_budget": planner.time_budget,
                "max_trials": planner.max_trials,
                "xi": planner.xi,
                "particles": planner.particles,
            },
            "air": {
                "k": planner.air.schedule.k,
                "r_star": planner.air.r_star,
                "mutation_sigma_scale": planner.air.mutation_sigma_scale,
                "n_sweeps": planner.air.n_sweeps,
                "finish_tempering": planner.air.finish_tempering,
            },
            "bounds": planner.bounds.to_dict(),
            "sir": {
                "ess_threshold_fraction": self.sir.ess_threshold_fraction,
                "root_update": str(self.root_update),
            },
            "episodes": self.episodes,
            "max_steps": self.max_steps,
            "master_seed": self.master_seed,
            "workers": self.workers,
            "output_dir": str(self.output_dir),
            "particle_counts": list(self.particle_counts),
            "r_star_grid": list(self.r_star_grid),
        }

    def to_yaml(self, path: Union[str, Path]):
        with open(path, "w") as f:
            yaml.safe_dump(self.to_dict(), f, sort_keys=False)

    def with_overrides(
        self,
        seed: Optional[int] = None,
        episodes: Optional[int] = None,
        output_dir: Optional[Union[str, Path]] = None,
        particles: Optional[int] = None,
        time_budget: Optional[float] = None,
        max_trials: Optional[int] = None,
        workers: Optional[int] = None,
        solver: Optional[SolverName] = None,
        r_star: Optional[float] = None,
    ) -> "ExperimentConfig":
        """Copy with the given fields replaced; None leaves a field unchanged."""
        planner = self.planner
        if particles is not None:
            planner = replace(planner, particles=particles)
        if time_budget is not None:
            planner = replace(planner, time_budget=time_budget)
        if max_trials is not None:
            planner = replace(planner, max_trials=max_trials)
        if r_star is not None:
            planner = replace(planner, air=replace(planner.air, r_star=r_star))

        cfg = replace(self, planner=planner)
        if seed is not None:
            cfg = replace(cfg, master_seed=seed)
        if episodes is not None:
            cfg = replace(cfg, episodes=episodes)
        if output_dir is not None:
            cfg = replace(cfg, output_dir=Path(output_dir))
        if workers is not None:
            cfg = replace(cfg, workers=workers)
        if solver is not None:
            cfg = replace(cfg, solver=solver)
        return cfg.validate()

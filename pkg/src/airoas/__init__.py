from .air import AirConfig, annealed_importance_resampling, tempering_schedule
from .baseline import SirConfig, plan_no_air, sir_update
from .bounds import BoundInitializer, BoundsConfig
from .constants import DomainName, SolverName
from .core import PomdpModel, WeightedParticleSet
from .domains import build_model
from .exceptions import AiroasError, ZeroTotalWeight
from .harness import ExperimentConfig, run_episode, run_experiment
from .tree import Planner, PlannerConfig, plan

__all__ = [
    "AiroasError",
    "AirConfig",
    "BoundInitializer",
    "BoundsConfig",
    "DomainName",
    "ExperimentConfig",
    "Planner",
    "PlannerConfig",
    "PomdpModel",
    "SirConfig",
    "SolverName",
    "WeightedParticleSet",
    "ZeroTotalWeight",
    "annealed_importance_resampling",
    "build_model",
    "plan",
    "plan_no_air",
    "run_episode",
    "run_experiment",
    "sir_update",
    "tempering_schedule",
]

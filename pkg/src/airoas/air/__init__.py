from .config import AirConfig, TemperingSchedule
from .resampling import (
    AirStats,
    acceptance_probability,
    annealed_importance_resampling,
    inefficiency,
    mutate,
    update_weights,
)
from .schedule import sigmoid_beta, tempering_schedule

__all__ = [
    "AirConfig",
    "AirStats",
    "TemperingSchedule",
    "acceptance_probability",
    "annealed_importance_resampling",
    "inefficiency",
    "mutate",
    "sigmoid_beta",
    "tempering_schedule",
    "update_weights",
]

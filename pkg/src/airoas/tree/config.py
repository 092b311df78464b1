from dataclasses import dataclass, field
from typing import Optional

from ..air.config import AirConfig
from ..bounds.config import BoundsConfig
from ..constants import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_PARTICLES,
    DEFAULT_TIME_BUDGET,
    DEFAULT_XI,
)
from ..utils.validation import in_open_unit_interval
from .exceptions import InvalidPlannerConfig


@dataclass
class PlannerConfig:
    """
    Configuration of the belief tree search.

    Attributes:
        max_depth (int): Depth at which leaves are closed (upper bound set to lower bound).
        time_budget (float): Seconds per decision, checked between trials.
        max_trials (Optional[int]): Trial cap, for machine independent runs.
        xi (float): Target fraction of the root gap, in (0, 1).
        gamma (Optional[float]): Discount factor; taken from the model when None.
        air (AirConfig): Annealed importance resampling settings.
        particles (int): Particle count m of the root belief.
        bounds (BoundsConfig): Leaf bound initializer settings.
        use_air (bool): Run annealed importance resampling at new leaves.
        seed (Optional[int]): Seed used when no random stream is supplied.
    """

    max_depth: int = DEFAULT_MAX_DEPTH
    time_budget: float = DEFAULT_TIME_BUDGET
    max_trials: Optional[int] = None
    xi: float = DEFAULT_XI
    gamma: Optional[float] = None
    air: AirConfig = field(default_factory=AirConfig)
    particles: int = DEFAULT_PARTICLES
    bounds: BoundsConfig = field(default_factory=BoundsConfig)
    use_air: bool = True
    seed: Optional[int] = None

    def validate(self) -> "PlannerConfig":
        if not in_open_unit_interval(self.xi):
            raise InvalidPlannerConfig(f"xi must be in (0, 1), got {self.xi}")
        if self.gamma is not None and not in_open_unit_interval(self.gamma):
            raise InvalidPlannerConfig(f"gamma must be in (0, 1), got {self.gamma}")
        if self.max_depth < 1:
            raise InvalidPlannerConfig(f"max_depth must be >= 1, got {self.max_depth}")
        if self.time_budget <= 0:
            raise InvalidPlannerConfig(
                f"time_budget must be > 0, got {self.time_budget}"
            )
        if self.max_trials is not None and self.max_trials < 0:
            raise InvalidPlannerConfig(
                f"max_trials must be >= 0, got {self.max_trials}"
            )
        if self.particles < 1:
            raise InvalidPlannerConfig(
                f"particles must be >= 1, got {self.particles}"
            )
        self.air.validate()
        return self

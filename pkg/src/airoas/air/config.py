from dataclasses import dataclass, field
from typing import Sequence

from ..constants import DEFAULT_MUTATION_SIGMA_SCALE, DEFAULT_R_STAR
from .exceptions import InvalidAirConfig


@dataclass(frozen=True)
class TemperingSchedule:
    """
    Monotone sequence of tempering parameters bridging prior (0) and posterior (1).

    Attributes:
        betas (tuple[float, ...]): beta_0 ... beta_K with beta_0 = 0 and beta_K = 1.

    Raises:
        InvalidAirConfig: If endpoints are not exactly 0 and 1 or the sequence decreases.
    """

    betas: tuple

    def __post_init__(self):
        betas = tuple(float(b) for b in self.betas)
        if len(betas) < 2:
            raise InvalidAirConfig("a schedule needs at least two betas")
        if betas[0] != 0.0 or betas[-1] != 1.0:
            raise InvalidAirConfig(
                f"schedule must start at 0 and end at 1, got {betas[0]} .. {betas[-1]}"
            )
        if any(b1 < b0 for b0, b1 in zip(betas, betas[1:])):
            raise InvalidAirConfig("schedule must be nondecreasing")
        object.__setattr__(self, "betas", betas)

    @property
    def k(self) -> int:
        """Number of tempering steps K."""
        return len(self.betas) - 1

    @classmethod
    def from_sequence(cls, betas: Sequence[float]) -> "TemperingSchedule":
        return cls(tuple(betas))


def _default_schedule() -> TemperingSchedule:
    from .schedule import tempering_schedule

    return tempering_schedule()


@dataclass
class AirConfig:
    """
    Configuration of one annealed importance resampling pass.

    Attributes:
        schedule (TemperingSchedule): Tempering parameters (default: 100 sigmoid-spaced steps).
        r_star (float): Target inefficiency ratio, at least 1.
        mutation_sigma_scale (float): Proportionality constant between the proposal
            standard deviation and the state-to-observation L1 distance.
        n_sweeps (int): Metropolis-Hastings sweeps per tempering step.
        finish_tempering (bool): On early exit at beta_k < 1, apply the remaining
            likelihood increment so the result targets the full posterior.
    """

    schedule: TemperingSchedule = field(default_factory=_default_schedule)
    r_star: float = DEFAULT_R_STAR
    mutation_sigma_scale: float = DEFAULT_MUTATION_SIGMA_SCALE
    n_sweeps: int = 1
    finish_tempering: bool = True

    def validate(self) -> "AirConfig":
        if self.r_star < 1.0:
            raise InvalidAirConfig(f"r* must be >= 1, got {self.r_star}")
        if self.mutation_sigma_scale <= 0:
            raise InvalidAirConfig(
                f"mutation_sigma_scale must be > 0, got {self.mutation_sigma_scale}"
            )
        if self.n_sweeps < 1:
            raise InvalidAirConfig(f"n_sweeps must be >= 1, got {self.n_sweeps}")
        return self

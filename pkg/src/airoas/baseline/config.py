from dataclasses import dataclass

from ..constants import DEFAULT_ESS_THRESHOLD_FRACTION
from .exceptions import InvalidSirConfig


@dataclass
class SirConfig:
    """
    Bootstrap filter settings.

    Attributes:
        ess_threshold_fraction (float): Resample when the effective sample
            size drops below this fraction of the particle count.
    """

    ess_threshold_fraction: float = DEFAULT_ESS_THRESHOLD_FRACTION

    def validate(self) -> "SirConfig":
        if not 0.0 < self.ess_threshold_fraction <= 1.0:
            raise InvalidSirConfig(
                f"ess_threshold_fraction must be in (0, 1], got {self.ess_threshold_fraction}"
            )
        return self

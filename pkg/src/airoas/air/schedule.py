import numpy as np

from ..constants import DEFAULT_TEMPERING_STEPS
from .config import TemperingSchedule
from .exceptions import InvalidK

SCHEDULE_START = 1e-3
SIGMOID_SLOPE = 10.0


def sigmoid_beta(x):
    """Sigmoid map 1 / (1 + exp(-10 (x - 0.5))) used to space tempering parameters."""
    return 1.0 / (1.0 + np.exp(-SIGMOID_SLOPE * (np.asarray(x, dtype=float) - 0.5)))


def tempering_schedule(k: int = DEFAULT_TEMPERING_STEPS) -> TemperingSchedule:
    """
    Build a sigmoid-spaced tempering schedule.

    ``k`` points are spaced linearly on [1e-3, 1] and mapped through
    :func:`sigmoid_beta`. The raw curve never reaches 0 or 1, so 0 is
    prepended and the last value is clamped to 1.

    Args:
        k (int): Number of tempering steps, at least 2.

    Returns:
        TemperingSchedule: k + 1 nondecreasing betas from 0 to 1.

    Raises:
        InvalidK: If k < 2.
    """
    if k < 2:
        raise InvalidK(k)
    betas = sigmoid_beta(np.linspace(SCHEDULE_START, 1.0, k))
    betas = np.concatenate(([0.0], betas))
    betas[-1] = 1.0
    return TemperingSchedule(tuple(betas.tolist()))

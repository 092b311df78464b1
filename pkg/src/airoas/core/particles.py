from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ..exceptions import InvalidParticleSet, ZeroTotalWeight


@dataclass(frozen=True, eq=False)
class WeightedParticleSet:
    """
    Belief approximation made of states and unnormalised nonnegative weights.

    Both arrays are made read-only on construction; operations return new sets.

    Attributes:
        particles (np.ndarray): States, shape (N, state_dim).
        weights (np.ndarray): Nonnegative weights, shape (N,).
        degenerate (bool): Allows a zero total weight; every normalising
            operation on such a set raises ZeroTotalWeight.
    """

    particles: np.ndarray
    weights: np.ndarray
    degenerate: bool = False

    def __post_init__(self):
        particles = np.array(self.particles)
        if particles.ndim == 1:
            particles = particles[:, None]
        weights = np.array(self.weights, dtype=float)

        if weights.ndim != 1 or len(weights) != len(particles):
            raise InvalidParticleSet(
                f"{len(particles)} particles but weights of shape {weights.shape}"
            )
        if len(weights) == 0:
            raise InvalidParticleSet("particle set is empty")
        if not np.all(np.isfinite(weights)) or np.any(weights < 0):
            raise InvalidParticleSet("weights must be finite and nonnegative")
        if not self.degenerate and weights.sum() <= 0:
            raise ZeroTotalWeight(len(weights), "set is not marked degenerate")

        particles.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "particles", particles)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, particles: np.ndarray) -> "WeightedParticleSet":
        """Build a set where every particle has weight 1."""
        return cls(particles, np.ones(len(particles)))

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def with_weights(self, weights: np.ndarray) -> "WeightedParticleSet":
        return WeightedParticleSet(self.particles, weights)

    def with_particles(self, particles: np.ndarray) -> "WeightedParticleSet":
        return WeightedParticleSet(particles, self.weights)

    def copy(self) -> "WeightedParticleSet":
        return WeightedParticleSet(
            self.particles.copy(), self.weights.copy(), self.degenerate
        )

    def mean(self) -> np.ndarray:
        """Weighted mean of the particle rows."""
        return normalize_weights(self) @ self.particles


def normalize_weights(b: Union[WeightedParticleSet, np.ndarray]) -> np.ndarray:
    """
    Scale weights so they sum to one.

    Args:
        b (WeightedParticleSet or np.ndarray): A particle set or a raw weight vector.

    Returns:
        np.ndarray: A new array of normalised weights; the input is unchanged.

    Raises:
        ZeroTotalWeight: If the weights sum to zero.
    """
    weights = b.weights if isinstance(b, WeightedParticleSet) else np.asarray(b, float)
    total = weights.sum()
    if total <= 0:
        raise ZeroTotalWeight(len(weights))
    return weights / total


def ess(normalized_weights: np.ndarray) -> float:
    """
    Effective sample size 1 / sum(w_i^2) of normalised weights.

    Returns:
        float: A value in [1, N].
    """
    w = np.asarray(normalized_weights, dtype=float)
    return float(1.0 / np.sum(w * w))


def systematic_indices(normalized_weights: np.ndarray, u: float) -> np.ndarray:
    """
    Ancestor indices of systematic resampling for a single uniform draw ``u``.

    Stratum i is positioned at (u + i) / N and picks the particle whose
    cumulative weight interval contains it.
    """
    w = np.asarray(normalized_weights, dtype=float)
    n = len(w)
    positions = (u + np.arange(n)) / n
    cumulative = np.cumsum(w)
    cumulative[-1] = 1.0
    return np.searchsorted(cumulative, positions, side="right")


def systematic_resample(
    b: WeightedParticleSet, rng: np.random.Generator, u: Optional[float] = None
) -> WeightedParticleSet:
    """
    Low-variance systematic resampling.

    Every output particle gets the mean input weight, so the total weight of
    the set is preserved.

    Args:
        b (WeightedParticleSet): Set to resample.
        rng (np.random.Generator): Source of the single uniform draw.
        u (Optional[float]): Fixed draw in [0, 1), bypasses ``rng``.

    Returns:
        WeightedParticleSet: N resampled particles.

    Raises:
        ZeroTotalWeight: If the weights sum to zero.
    """
    w = normalize_weights(b)
    if u is None:
        u = rng.uniform()
    idx = systematic_indices(w, u)
    mean_weight = b.total_weight / len(b)
    return WeightedParticleSet(b.particles[idx], np.full(len(b), mean_weight))

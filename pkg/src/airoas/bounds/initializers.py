import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from ..constants import DEFAULT_ROLLOUT_HORIZON
from ..core.model import PomdpModel
from ..core.particles import WeightedParticleSet, normalize_weights
from .config import BoundKind, BoundsConfig, BoundSpec
from .exceptions import InvalidBounds, UnsupportedBound

logger = logging.getLogger(__name__)


class BoundEstimator(ABC):
    """
    One side of a bound initializer.

    An estimator returns a matrix of per-particle values, one row per
    candidate policy; the bound of a belief is the best row's weighted mean.
    This lets sibling beliefs that share particle states but not weights
    reuse a single evaluation.
    """

    @abstractmethod
    def particle_values(
        self, states: np.ndarray, model: PomdpModel, rng: np.random.Generator
    ) -> np.ndarray:
        """Per-particle values, shape (rows, N)."""


class FixedValue(BoundEstimator):
    """Constant value for every nonterminal particle."""

    def __init__(self, value: float):
        self.value = float(value)

    def particle_values(self, states, model, rng):
        return np.full((1, len(states)), self.value)


class FixedActionRollout(BoundEstimator):
    """
    Discounted return of repeating one action regardless of observations.

    Every candidate action is simulated from every particle in a single
    batch, for ``horizon`` steps or until all rollouts are terminal.
    """

    def __init__(
        self,
        horizon: int = DEFAULT_ROLLOUT_HORIZON,
        actions: Optional[Sequence[int]] = None,
    ):
        self.horizon = horizon
        self.actions = None if actions is None else list(actions)

    def particle_values(self, states, model, rng):
        actions = self.actions if self.actions is not None else list(model.actions())
        n = len(states)
        batch = np.tile(states, (len(actions),) + (1,) * (states.ndim - 1))
        batch_actions = np.repeat(np.asarray(actions, dtype=int), n)
        returns = np.zeros(len(batch))
        discount = 1.0
        gamma = model.discount()

        for _ in range(self.horizon):
            if np.all(model.is_terminal(batch)):
                break
            result = model.step(batch, batch_actions, rng)
            returns += discount * result.rewards
            discount *= gamma
            batch = result.states

        return returns.reshape(len(actions), n)


class MdpApprox(BoundEstimator):
    """Fully observable optimal value of every particle."""

    def particle_values(self, states, model, rng):
        try:
            return np.asarray(model.mdp_value(states), dtype=float)[None, :]
        except NotImplementedError as e:
            raise UnsupportedBound(str(e)) from e


class ParticleBounds(NamedTuple):
    """
    Per-particle bound values of one successor set.

    Attributes:
        lower (np.ndarray): Shape (rows, N), terminal particles zeroed.
        upper (np.ndarray): Shape (rows, N), terminal particles zeroed.
    """

    lower: np.ndarray
    upper: np.ndarray

    def evaluate(self, weights: np.ndarray) -> tuple[float, float]:
        """
        Bounds of the belief that puts ``weights`` on these particles.

        Raises:
            ZeroTotalWeight: If the weights sum to zero.
        """
        w = normalize_weights(weights)
        lower = float(np.max(self.lower @ w))
        upper = float(np.max(self.upper @ w))
        if upper < lower:
            logger.debug(f"Raising upper bound {upper:.4f} to lower bound {lower:.4f}")
            upper = lower
        return lower, upper


@dataclass
class BoundInitializer:
    """
    Lower/upper bound initializer for new belief nodes.

    Attributes:
        lower (BoundEstimator): Lower side.
        upper (BoundEstimator): Upper side.
    """

    lower: BoundEstimator
    upper: BoundEstimator

    @classmethod
    def fixed(cls, lo: float, hi: float) -> "BoundInitializer":
        lo, hi = fixed_bounds(lo, hi)
        return cls(FixedValue(lo), FixedValue(hi))

    @classmethod
    def from_config(cls, cfg: BoundsConfig) -> "BoundInitializer":
        if cfg.lower.kind is BoundKind.FIXED and cfg.upper.kind is BoundKind.FIXED:
            return cls.fixed(cfg.lower.value, cfg.upper.value)
        return cls(_estimator(cfg.lower), _estimator(cfg.upper))

    def prepare(
        self, states: np.ndarray, model: PomdpModel, rng: np.random.Generator
    ) -> ParticleBounds:
        """Evaluate both sides on a successor set; terminal particles are worth 0."""
        terminal = model.is_terminal(states)
        lower = np.array(self.lower.particle_values(states, model, rng), dtype=float)
        upper = np.array(self.upper.particle_values(states, model, rng), dtype=float)
        lower[:, terminal] = 0.0
        upper[:, terminal] = 0.0
        return ParticleBounds(lower, upper)

    def bounds(
        self, b: WeightedParticleSet, model: PomdpModel, rng: np.random.Generator
    ) -> tuple[float, float]:
        return self.prepare(b.particles, model, rng).evaluate(b.weights)


def _estimator(spec: BoundSpec) -> BoundEstimator:
    if spec.kind is BoundKind.FIXED:
        if spec.value is None:
            raise InvalidBounds(None, None, "fixed bound needs a value")
        return FixedValue(spec.value)
    if spec.kind is BoundKind.ROLLOUT:
        return FixedActionRollout(spec.horizon, spec.actions)
    return MdpApprox()


def fixed_bounds(lo: float, hi: float) -> tuple[float, float]:
    """
    Belief-independent bound pair.

    Raises:
        InvalidBounds: If lo > hi.
    """
    if lo is None or hi is None or lo > hi:
        raise InvalidBounds(lo, hi)
    return float(lo), float(hi)


def fixed_action_rollout_lower(
    b: WeightedParticleSet,
    model: PomdpModel,
    horizon: int,
    rng: np.random.Generator,
    actions: Optional[Sequence[int]] = None,
) -> float:
    """
    Lower bound from the best single action repeated for ``horizon`` steps.

    Returns:
        float: max over actions of the weight-averaged discounted return.
    """
    values = FixedActionRollout(horizon, actions).particle_values(
        b.particles, model, rng
    )
    return float(np.max(values @ normalize_weights(b)))


def mdp_upper(b: WeightedParticleSet, model: PomdpModel) -> float:
    """
    Upper bound from the weight-averaged fully observable value.

    Raises:
        UnsupportedBound: If the domain has no MDP value oracle.
    """
    values = MdpApprox().particle_values(b.particles, model, None)
    return float(values[0] @ normalize_weights(b))

import logging
from typing import Optional

import numpy as np

from ..air.config import AirConfig
from ..air.resampling import AirStats, annealed_importance_resampling
from ..core.model import Action, PomdpModel
from ..core.particles import (
    WeightedParticleSet,
    ess,
    normalize_weights,
    systematic_resample,
)
from ..exceptions import ZeroTotalWeight
from ..tree.config import PlannerConfig
from ..tree.planner import Planner
from .config import SirConfig

logger = logging.getLogger(__name__)


def sir_update(
    b: WeightedParticleSet,
    a: Action,
    o,
    model: PomdpModel,
    cfg: SirConfig,
    rng: np.random.Generator,
) -> WeightedParticleSet:
    """
    Bootstrap filter step for an executed action and a received observation.

    Particles are propagated through the simulator (its sampled observations
    and rewards are discarded) and reweighted by p(o | s', a). The set is
    resampled when the effective sample size falls below
    ``cfg.ess_threshold_fraction * N``.

    Raises:
        ZeroTotalWeight: If the observation is impossible under every propagated particle.
    """
    propagated = model.step(b.particles, a, rng).states
    weights = b.weights * model.obs_density(o, propagated, a)
    if weights.sum() <= 0:
        raise ZeroTotalWeight(len(b), f"observation {o} impossible after action {a}")

    updated = WeightedParticleSet(propagated, weights)
    effective = ess(normalize_weights(weights))
    if effective < cfg.ess_threshold_fraction * len(updated):
        logger.debug(f"ESS {effective:.1f} below threshold, resampling {len(updated)} particles")
        updated = systematic_resample(updated, rng)
    return updated


def air_update(
    b: WeightedParticleSet,
    a: Action,
    o,
    model: PomdpModel,
    cfg: AirConfig,
    rng: np.random.Generator,
    stats: Optional[AirStats] = None,
) -> WeightedParticleSet:
    """
    Root belief update that replaces the one-shot reweighting by an annealed resampling pass.

    Raises:
        ZeroTotalWeight: If the observation is impossible under every propagated particle.
    """
    propagated = model.step(b.particles, a, rng).states
    return annealed_importance_resampling(
        WeightedParticleSet(propagated, b.weights), o, a, cfg, model, rng, stats
    )


def plan_no_air(
    root_belief: WeightedParticleSet,
    model: PomdpModel,
    cfg: PlannerConfig,
    rng: Optional[np.random.Generator] = None,
) -> Action:
    """
    Plan with the same tree search but no resampling at new leaves.

    Leaf beliefs keep the likelihood weights given at expansion.

    Raises:
        EmptyRootBelief: If the belief holds no particles.
    """
    return Planner(model, cfg, rng, air_enabled=False).plan(root_belief)

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..constants import DEFAULT_MUTATION_SIGMA_SCALE
from ..core.model import Action, PomdpModel
from ..core.particles import WeightedParticleSet, systematic_indices
from ..exceptions import ZeroTotalWeight
from .config import AirConfig
from .exceptions import InvalidAirConfig

logger = logging.getLogger(__name__)


@dataclass
class AirStats:
    """
    Counters collected during annealed importance resampling.

    Attributes:
        iterations (int): Tempering steps whose weight update ran.
        resamples (int): Resample-and-mutate rounds.
        proposed (int): Metropolis-Hastings proposals made.
        accepted (int): Proposals accepted.
        final_beta (float): Tempering parameter reached when the loop stopped.
    """

    iterations: int = 0
    resamples: int = 0
    proposed: int = 0
    accepted: int = 0
    final_beta: float = 0.0

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.proposed if self.proposed else 0.0


def _tempered(
    weights: np.ndarray, likelihood: np.ndarray, beta_k: float, beta_prev: float, o
) -> np.ndarray:
    weights = weights * np.power(likelihood, beta_k - beta_prev)
    if weights.sum() <= 0:
        raise ZeroTotalWeight(len(weights), f"observation {o} impossible under the belief")
    return weights


def update_weights(
    b: WeightedParticleSet,
    o,
    a: Action,
    beta_k: float,
    beta_prev: float,
    model: PomdpModel,
) -> WeightedParticleSet:
    """
    Move the weights from the bridging density at ``beta_prev`` to the one at ``beta_k``.

    Every weight is multiplied by p(o | s, a) ** (beta_k - beta_prev); states are unchanged.

    Raises:
        InvalidAirConfig: If not 0 <= beta_prev <= beta_k <= 1.
        ZeroTotalWeight: If the observation has zero likelihood under every particle.
    """
    if not 0.0 <= beta_prev <= beta_k <= 1.0:
        raise InvalidAirConfig(
            f"tempering step must satisfy 0 <= {beta_prev} <= {beta_k} <= 1"
        )
    if beta_k == beta_prev:
        return b
    likelihood = model.obs_density(o, b.particles, a)
    return b.with_weights(_tempered(b.weights, likelihood, beta_k, beta_prev, o))


def _inefficiency(weights: np.ndarray) -> float:
    mean = weights.mean()
    if mean <= 0:
        raise ZeroTotalWeight(len(weights))
    ratio = weights / mean
    return float(np.mean(ratio * ratio))


def inefficiency(b: WeightedParticleSet) -> float:
    """
    Normalised second moment of the weights, (1/M) sum_j (w_j / mean(w)) ** 2.

    Scale invariant, at least 1, and equal to 1 exactly for uniform weights.

    Raises:
        ZeroTotalWeight: If the weights sum to zero.
    """
    return _inefficiency(b.weights)


def _acceptance(fwd_density, rev_density, lik_old, lik_new, beta_k: float) -> np.ndarray:
    numerator = np.asarray(rev_density, float) * np.power(lik_new, beta_k)
    denominator = np.asarray(fwd_density, float) * np.power(lik_old, beta_k)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(
            denominator > 0, numerator / np.where(denominator > 0, denominator, 1.0), np.inf
        )
    return np.where(numerator > 0, np.minimum(1.0, ratio), 0.0)


def acceptance_probability(
    s_old: np.ndarray,
    s_new: np.ndarray,
    fwd_density,
    rev_density,
    o,
    a: Action,
    beta_k: float,
    model: PomdpModel,
):
    """
    Metropolis-Hastings acceptance probability at tempering level ``beta_k``.

    ``fwd_density`` is q(s_new | s_old) and ``rev_density`` is q(s_old | s_new).
    The ratio is

        rev_density * p(o | s_new, a) ** beta_k / (fwd_density * p(o | s_old, a) ** beta_k)

    capped at 1. A zero numerator always rejects, 0 / 0 included. For the
    symmetric proposals used by most domains the two densities cancel.

    Args:
        s_old, s_new (np.ndarray): A single state or a batch of states.
        fwd_density, rev_density: Scalars or arrays matching the batch.

    Returns:
        float or np.ndarray: Probabilities in [0, 1].
    """
    scalar = np.ndim(fwd_density) == 0
    lik_old = model.obs_density(o, np.atleast_2d(s_old), a)
    lik_new = model.obs_density(o, np.atleast_2d(s_new), a)
    probability = _acceptance(fwd_density, rev_density, lik_old, lik_new, beta_k)
    return float(probability[0]) if scalar else probability


def _sweeps(
    particles: np.ndarray,
    likelihood: np.ndarray,
    o,
    a: Action,
    beta_k: float,
    model: PomdpModel,
    rng: np.random.Generator,
    sigma_scale: float,
    n_sweeps: int,
    stats: Optional[AirStats],
) -> tuple[np.ndarray, np.ndarray]:
    """MH sweeps that carry each particle's likelihood along with it."""
    for _ in range(n_sweeps):
        proposal = model.propose_mutation(particles, o, a, rng, sigma_scale)
        candidate_likelihood = model.obs_density(o, proposal.candidates, a)
        probability = _acceptance(
            proposal.forward_density,
            proposal.reverse_density,
            likelihood,
            candidate_likelihood,
            beta_k,
        )
        accept = rng.uniform(size=len(particles)) < probability
        particles = np.where(accept[:, None], proposal.candidates, particles)
        likelihood = np.where(accept, candidate_likelihood, likelihood)
        if stats is not None:
            stats.proposed += len(particles)
            stats.accepted += int(accept.sum())
    return particles, likelihood


def mutate(
    b: WeightedParticleSet,
    o,
    a: Action,
    beta_k: float,
    model: PomdpModel,
    rng: np.random.Generator,
    sigma_scale: float = DEFAULT_MUTATION_SIGMA_SCALE,
    n_sweeps: int = 1,
    stats: Optional[AirStats] = None,
) -> WeightedParticleSet:
    """
    Metropolis-Hastings move of every particle, leaving likelihood ** beta_k invariant.

    Each sweep draws exactly one candidate per particle from the domain
    proposal and accepts it with the :func:`acceptance_probability` rule.
    Weights are not modified.
    """
    likelihood = model.obs_density(o, b.particles, a)
    particles, _ = _sweeps(
        b.particles, likelihood, o, a, beta_k, model, rng, sigma_scale, n_sweeps, stats
    )
    return b.with_particles(particles)


def annealed_importance_resampling(
    b: WeightedParticleSet,
    o,
    a: Action,
    cfg: AirConfig,
    model: PomdpModel,
    rng: np.random.Generator,
    stats: Optional[AirStats] = None,
) -> WeightedParticleSet:
    """
    Carry a transition-distributed particle set towards the posterior given (a, o).

    For k = 1..K the weights are tempered from beta_{k-1} to beta_k. When the
    inefficiency is at most the running target the loop stops; otherwise the
    target is raised to the current inefficiency and the set is resampled and
    mutated at beta_k. The running target starts from ``cfg.r_star`` on every
    call.

    With ``cfg.finish_tempering``, a loop that stops below beta = 1 applies
    the remaining likelihood exponent in one step, then resamples and
    mutates at beta = 1 if the inefficiency exceeds ``cfg.r_star``.

    The likelihood of every particle is evaluated once and then carried
    through resampling and accepted moves, so a resample round costs one
    density evaluation of the candidates.

    Args:
        b (WeightedParticleSet): Particles with their pre-observation weights.
        o: Observation on the edge leading to this belief.
        a (Action): Action on the edge leading to this belief.
        cfg (AirConfig): Schedule, target inefficiency and mutation settings.
        model (PomdpModel): Observation model and mutation proposal.
        rng (np.random.Generator): Random stream.
        stats (Optional[AirStats]): Counters to fill in.

    Returns:
        WeightedParticleSet: A set with as many particles as ``b``.

    Raises:
        ZeroTotalWeight: If the observation is impossible under every particle.
    """
    stats = stats if stats is not None else AirStats()
    betas = cfg.schedule.betas
    r_star = cfg.r_star
    particles = b.particles
    weights = b.weights
    likelihood = np.asarray(model.obs_density(o, particles, a), dtype=float)

    def resample_and_move(beta):
        nonlocal particles, weights, likelihood
        idx = systematic_indices(weights / weights.sum(), rng.uniform())
        weights = np.full(len(weights), weights.mean())
        particles, likelihood = _sweeps(
            particles[idx],
            likelihood[idx],
            o,
            a,
            beta,
            model,
            rng,
            cfg.mutation_sigma_scale,
            cfg.n_sweeps,
            stats,
        )
        stats.resamples += 1

    for k in range(1, len(betas)):
        weights = _tempered(weights, likelihood, betas[k], betas[k - 1], o)
        stats.iterations += 1
        stats.final_beta = betas[k]
        score = _inefficiency(weights)
        if score <= r_star:
            if cfg.finish_tempering and betas[k] < 1.0:
                weights = _tempered(weights, likelihood, 1.0, betas[k], o)
                stats.final_beta = 1.0
                if _inefficiency(weights) > cfg.r_star:
                    resample_and_move(1.0)
            break
        r_star = score
        resample_and_move(betas[k])

    logger.debug(
        f"AIR stopped at beta={stats.final_beta:.4f} after {stats.iterations} "
        f"iterations, {stats.resamples} resamples"
    )
    return WeightedParticleSet(particles, weights)

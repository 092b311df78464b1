import logging

import numpy as np

from ..constants import DomainName
from ..core.model import Proposal
from .config import LaserTagParams
from .exceptions import InvalidDomainParams
from .grid import BEAMS, GridMap, rounded_reading_mass
from .tag import TagBase

logger = logging.getLogger(__name__)

CO_LOCATED_READING = -1
"""Every beam reads this value when agent and target share a cell."""

MAX_LAYOUT_ATTEMPTS = 1000


def random_obstacle_map(params: LaserTagParams) -> GridMap:
    """
    Draw ``n_obstacles`` blocked cells from ``map_seed`` until the free cells are connected.

    Raises:
        InvalidDomainParams: If no connected layout is found.
    """
    rng = np.random.default_rng(params.map_seed)
    total = params.rows * params.cols
    for attempt in range(MAX_LAYOUT_ATTEMPTS):
        free = np.ones(total, dtype=bool)
        free[rng.choice(total, size=params.n_obstacles, replace=False)] = False
        grid = GridMap(free.reshape(params.rows, params.cols))
        if grid.is_connected():
            logger.debug(f"Obstacle layout found after {attempt + 1} draws")
            return grid
    raise InvalidDomainParams(
        f"no connected layout with {params.n_obstacles} obstacles for seed {params.map_seed}"
    )


class LaserTag(TagBase):
    """
    Tag where neither position is observed.

    Observations are 8 integer range readings, one per compass direction.
    Each reading is the distance to the first obstacle, grid edge or the
    target, plus Gaussian noise, rounded and clipped at zero. When agent and
    target are co-located every beam reads ``CO_LOCATED_READING``.
    """

    name = str(DomainName.LASERTAG)

    def __init__(self, params: LaserTagParams = None):
        params = (params or LaserTagParams()).validate()
        super().__init__(random_obstacle_map(params), params)
        self.true_readings = self.grid.ray_distances()

    def observe(self, states, rng):
        p = self.params
        states = np.atleast_2d(states)
        distances = self.true_readings[states[:, 0], states[:, 1]]
        noisy = np.rint(distances + rng.normal(size=distances.shape) * p.laser_sigma)
        readings = np.maximum(noisy, 0).astype(int)
        co_located = (states[:, 0] == states[:, 1])[:, None]
        return np.where(co_located, CO_LOCATED_READING, readings)

    def obs_density(self, observation, states, action):
        o = np.asarray(observation, dtype=int).reshape(1, -1)
        return self.obs_densities(o, states, action)[0]

    def obs_densities(self, observations, states, action):
        states = np.atleast_2d(states)
        o = np.asarray(observations, dtype=int).reshape(-1, len(BEAMS))
        co_located = states[:, 0] == states[:, 1]
        reports_co_located = np.all(o == CO_LOCATED_READING, axis=1)[:, None]
        distances = self.true_readings[states[:, 0], states[:, 1]]
        density = rounded_reading_mass(
            o[:, None, :], distances[None, :, :], self.params.laser_sigma
        ).prod(axis=2)
        return np.where(
            reports_co_located, co_located, np.where(co_located, 0.0, density)
        )

    def beam_density(self, reading: int, distance: int) -> float:
        """Probability of one beam's reading given its noiseless distance."""
        return float(rounded_reading_mass(reading, distance, self.params.laser_sigma))

    def obs_keys(self, observations):
        return np.floor_divide(np.asarray(observations, dtype=int), self.params.obs_bin_width)

    def propose_mutation(self, states, observation, action, rng, sigma_scale):
        """Move agent and target independently to nearby cells."""
        states = np.atleast_2d(states)
        terminal = self.is_terminal(states)
        sigma = self.params.mutation_sigma
        agents, fwd_agent, rev_agent = self.grid.sample_proposal(states[:, 0], sigma, rng)
        targets, fwd_target, rev_target = self.grid.sample_proposal(states[:, 1], sigma, rng)

        candidates = states.copy()
        candidates[:, 0] = np.where(terminal, states[:, 0], agents)
        candidates[:, 1] = np.where(terminal, states[:, 1], targets)
        return Proposal(
            candidates,
            np.where(terminal, 1.0, fwd_agent * fwd_target),
            np.where(terminal, 1.0, rev_agent * rev_target),
        )


def build_lasertag(params: LaserTagParams = None) -> LaserTag:
    return LaserTag(params)

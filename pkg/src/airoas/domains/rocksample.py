import logging

import numpy as np

from ..constants import DomainName
from ..core.model import PomdpModel, Proposal, StepResult
from .config import RockSampleParams
from .grid import MOVE_NAMES

logger = logging.getLogger(__name__)

NORTH, SOUTH, EAST, WEST, SAMPLE = range(5)
FIRST_SENSE = 5

NO_OBSERVATION, GOOD, BAD = 0, 1, 2

EXACT_MDP_MAX_GOOD_ROCKS = 8
"""Above this many good rocks the MDP value falls back to an additive relaxation."""


def rock_layout(params: RockSampleParams) -> np.ndarray:
    """(x, y) of every rock, drawn without repeats from ``rock_seed`` when not given."""
    if params.rock_positions is not None:
        return np.asarray(params.rock_positions, dtype=int).reshape(-1, 2)
    rng = np.random.default_rng(params.rock_seed)
    cells = rng.choice(params.size * params.size, size=params.n_rocks, replace=False)
    return np.column_stack([cells % params.size, cells // params.size])


class RockSample(PomdpModel):
    """
    RockSample(n, m).

    State rows are ``[x, y, rock_1 .. rock_m, terminated]`` with rock bits
    1 for good. The robot starts at the west edge, senses rocks with an
    accuracy that decays with distance, samples rocks it stands on and ends
    the episode by leaving the map to the east. Moves into the north, south
    or west edge leave the robot in place.
    """

    name = str(DomainName.ROCKSAMPLE)

    def __init__(self, params: RockSampleParams = None):
        self.params = (params or RockSampleParams()).validate()
        p = self.params
        self.rocks = rock_layout(p)
        self.rock_at = np.full((p.size, p.size), -1, dtype=int)
        self.rock_at[self.rocks[:, 0], self.rocks[:, 1]] = np.arange(len(self.rocks))
        self._values: dict[tuple, float] = {}

    @property
    def n_rocks(self) -> int:
        return len(self.rocks)

    def state_count(self) -> int:
        return self.params.size**2 * 2**self.n_rocks

    def sensor_efficiency(self, distance) -> np.ndarray:
        """Probability that a sense action reports the true quality."""
        d0 = self.params.half_efficiency_distance
        return 0.5 + 0.5 * np.power(2.0, -np.asarray(distance, dtype=float) / d0)

    def rock_distance(self, states: np.ndarray, rock: int) -> np.ndarray:
        delta = np.atleast_2d(states)[:, :2] - self.rocks[rock]
        return np.sqrt((delta * delta).sum(axis=1))

    def initial_states(self, n, rng):
        p = self.params
        rocks = (rng.uniform(size=(n, self.n_rocks)) < p.good_probability).astype(int)
        start = np.tile([0, p.size // 2], (n, 1))
        return np.column_stack([start, rocks, np.zeros(n, dtype=int)])

    def step(self, states, actions, rng):
        p = self.params
        states = np.atleast_2d(np.asarray(states, dtype=int))
        n = len(states)
        actions = np.broadcast_to(np.asarray(actions), (n,))
        active = ~self.is_terminal(states)
        successors = states.copy()
        rewards = np.zeros(n)
        observations = np.full(n, NO_OBSERVATION, dtype=int)
        rows = np.arange(n)
        x, y = states[:, 0], states[:, 1]

        north = active & (actions == NORTH)
        south = active & (actions == SOUTH)
        west = active & (actions == WEST)
        east = active & (actions == EAST)
        exiting = east & (x == p.size - 1)
        successors[north, 1] = np.minimum(y[north] + 1, p.size - 1)
        successors[south, 1] = np.maximum(y[south] - 1, 0)
        successors[west, 0] = np.maximum(x[west] - 1, 0)
        successors[east & ~exiting, 0] = x[east & ~exiting] + 1
        successors[exiting, -1] = 1
        rewards[exiting] = p.exit_reward

        sample = active & (actions == SAMPLE)
        rock = self.rock_at[np.clip(x, 0, p.size - 1), np.clip(y, 0, p.size - 1)]
        on_rock = sample & (rock >= 0)
        good = np.zeros(n, dtype=bool)
        good[on_rock] = states[on_rock, 2 + rock[on_rock]] == 1
        rewards[sample] = np.where(good[sample], p.sample_reward, p.sample_penalty)
        successors[on_rock, 2 + rock[on_rock]] = 0

        u = rng.uniform(size=n)
        sense = active & (actions >= FIRST_SENSE)
        if sense.any():
            sensed = actions[sense] - FIRST_SENSE
            delta = states[sense, :2] - self.rocks[sensed]
            efficiency = self.sensor_efficiency(np.sqrt((delta * delta).sum(axis=1)))
            truth = states[rows[sense], 2 + sensed] == 1
            reported_good = np.where(u[sense] < efficiency, truth, ~truth)
            observations[sense] = np.where(reported_good, GOOD, BAD)

        return StepResult(successors, observations, rewards)

    def obs_density(self, observation, states, action):
        states = np.atleast_2d(states)
        o = int(np.asarray(observation).reshape(-1)[0])
        terminal = self.is_terminal(states)
        if action < FIRST_SENSE:
            return np.full(len(states), float(o == NO_OBSERVATION))
        if o == NO_OBSERVATION:
            return terminal.astype(float)

        rock = action - FIRST_SENSE
        efficiency = self.sensor_efficiency(self.rock_distance(states, rock))
        good = states[:, 2 + rock] == 1
        p_good = np.where(good, efficiency, 1.0 - efficiency)
        density = p_good if o == GOOD else 1.0 - p_good
        return np.where(terminal, 0.0, density)

    def actions(self):
        return list(range(FIRST_SENSE + self.n_rocks))

    def action_name(self, action):
        if action < SAMPLE:
            return MOVE_NAMES[action]
        if action == SAMPLE:
            return "sample"
        return f"sense{action - FIRST_SENSE}"

    def discount(self):
        return self.params.discount

    def is_terminal(self, states):
        return np.atleast_2d(states)[:, -1] == 1

    def propose_mutation(self, states, observation, action, rng, sigma_scale):
        """Flip the quality bit of the sensed rock; other actions keep the state."""
        states = np.atleast_2d(states)
        n = len(states)
        candidates = states.copy()
        if action >= FIRST_SENSE:
            column = 2 + action - FIRST_SENSE
            active = ~self.is_terminal(states)
            candidates[active, column] = 1 - states[active, column]
        return Proposal(candidates, np.ones(n), np.ones(n))

    def mdp_value(self, states):
        """
        Optimal value with every rock quality known.

        Exact over visiting orders while at most ``EXACT_MDP_MAX_GOOD_ROCKS``
        good rocks remain; beyond that each good rock is credited as if
        reached directly, which overestimates.
        """
        states = np.atleast_2d(states)
        values = np.zeros(len(states))
        keys, inverse = np.unique(states, axis=0, return_inverse=True)
        for k, state in enumerate(keys):
            if state[-1] == 1:
                continue
            good = tuple(int(i) for i in np.flatnonzero(state[2:-1]))
            values[inverse.reshape(-1) == k] = self._exact_value(
                int(state[0]), int(state[1]), good
            )
        return values

    def _exit_value(self, x: int) -> float:
        p = self.params
        return p.exit_reward * p.discount ** (p.size - 1 - x)

    def _exact_value(self, x: int, y: int, good: tuple) -> float:
        key = (x, y, good)
        if key in self._values:
            return self._values[key]
        p = self.params
        gamma = p.discount
        if len(good) > EXACT_MDP_MAX_GOOD_ROCKS:
            logger.debug(f"{len(good)} good rocks left, using the additive relaxation")
            distances = np.abs(self.rocks[list(good)] - [x, y]).sum(axis=1)
            best = float(self._exit_value(x) + (p.sample_reward * gamma**distances).sum())
        else:
            best = self._exit_value(x)
            for i in good:
                rx, ry = (int(v) for v in self.rocks[i])
                distance = abs(rx - x) + abs(ry - y)
                rest = tuple(j for j in good if j != i)
                value = gamma**distance * (
                    p.sample_reward + gamma * self._exact_value(rx, ry, rest)
                )
                best = max(best, value)
        self._values[key] = best
        return best


def build_rocksample(params: RockSampleParams = None) -> RockSample:
    return RockSample(params)

import numpy as np

from ..constants import DomainName
from ..core.model import PomdpModel, Proposal, StepResult
from .config import TagParams
from .grid import MOVE_NAMES, GridMap

TAG = 4
ACTION_NAMES = MOVE_NAMES + ("tag",)

TAG_MAP = (
    "..........",
    "..........",
    "#####...##",
    "#####...##",
    "#####...##",
)
"""The 29-cell map: two full rows of ten and a three-wide corridor below."""


class TagBase(PomdpModel):
    """
    Dynamics shared by Tag and LaserTag.

    State rows are ``[agent cell, opponent cell, tagged]``. Moves cost a
    constant, a tag on the opponent's cell ends the episode, and after every
    other action the opponent tries to move away from the agent.
    """

    def __init__(self, grid: GridMap, params: TagParams):
        self.grid = grid
        self.params = params

    def state_count(self) -> int:
        """Joint positions plus one tagged state per cell."""
        n = self.grid.n_cells
        return n * n + n

    def enumerate_states(self) -> np.ndarray:
        n = self.grid.n_cells
        agents, opponents = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        active = np.column_stack(
            [agents.reshape(-1), opponents.reshape(-1), np.zeros(n * n, dtype=int)]
        )
        cells = np.arange(n)
        tagged = np.column_stack([cells, cells, np.ones(n, dtype=int)])
        return np.vstack([active, tagged])

    def initial_states(self, n, rng):
        cells = self.grid.n_cells
        return np.column_stack(
            [
                rng.integers(cells, size=n),
                rng.integers(cells, size=n),
                np.zeros(n, dtype=int),
            ]
        )

    def step(self, states, actions, rng):
        p = self.params
        states = np.atleast_2d(np.asarray(states, dtype=int))
        n = len(states)
        actions = np.broadcast_to(np.asarray(actions), (n,))
        terminal = self.is_terminal(states)
        agent, opponent = states[:, 0], states[:, 1]

        tag = actions == TAG
        success = tag & (agent == opponent) & ~terminal
        rewards = np.where(
            tag, np.where(agent == opponent, p.tag_reward, p.tag_penalty), p.move_reward
        )
        rewards = np.where(terminal, 0.0, rewards)

        moved = self.grid.neighbours[agent, np.minimum(actions, TAG - 1)]
        new_agent = np.where(tag | terminal, agent, moved)
        fled = self.grid.flee(agent, opponent, p.flee_probability, rng)
        new_opponent = np.where(terminal | success, opponent, fled)

        successors = np.column_stack(
            [new_agent, new_opponent, (terminal | success).astype(int)]
        )
        return StepResult(successors, self.observe(successors, rng), rewards)

    def observe(self, states: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def actions(self):
        return list(range(len(ACTION_NAMES)))

    def action_name(self, action):
        return ACTION_NAMES[action]

    def discount(self):
        return self.params.discount

    def is_terminal(self, states):
        return np.atleast_2d(states)[:, 2] == 1

    def mdp_value(self, states):
        """
        Value with both positions known, treating the opponent as static.

        The opponent never moves closer, so this never underestimates the
        fully observable value.
        """
        p = self.params
        states = np.atleast_2d(states)
        steps = self.grid.distances[states[:, 0], states[:, 1]]
        gamma = p.discount
        travel = p.move_reward * (1.0 - gamma**steps) / (1.0 - gamma)
        value = travel + gamma**steps * p.tag_reward
        return np.where(self.is_terminal(states), 0.0, value)


class Tag(TagBase):
    """
    Tag: the agent sees its own cell, and the opponent only when they share it.

    Observations are integers: the agent's cell index, or ``n_cells`` when
    agent and opponent are co-located.
    """

    name = str(DomainName.TAG)

    def __init__(self, params: TagParams = None):
        super().__init__(GridMap.from_strings(list(TAG_MAP)), (params or TagParams()).validate())

    @property
    def co_located_observation(self) -> int:
        return self.grid.n_cells

    def observe(self, states, rng):
        states = np.atleast_2d(states)
        return np.where(
            states[:, 0] == states[:, 1], self.co_located_observation, states[:, 0]
        )

    def obs_density(self, observation, states, action):
        o = int(np.asarray(observation).reshape(-1)[0])
        return (self.observe(states, None) == o).astype(float)

    def propose_mutation(self, states, observation, action, rng, sigma_scale):
        """Move the opponent to a nearby cell; the agent stays put."""
        states = np.atleast_2d(states)
        terminal = self.is_terminal(states)
        new, forward, reverse = self.grid.sample_proposal(
            states[:, 1], self.params.mutation_sigma, rng
        )
        candidates = states.copy()
        candidates[:, 1] = np.where(terminal, states[:, 1], new)
        return Proposal(
            candidates,
            np.where(terminal, 1.0, forward),
            np.where(terminal, 1.0, reverse),
        )


def build_tag(params: TagParams = None) -> Tag:
    return Tag(params)

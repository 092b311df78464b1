"""Small models with closed-form answers, shared by the test suite."""

from typing import Optional

import numpy as np
from scipy.stats import norm

from airoas.core.model import PomdpModel, Proposal, StepResult


class GaussianModel(PomdpModel):
    """
    Scalar random walk observed through additive Gaussian noise.

    The mutation proposal is a symmetric random walk when ``proposal_std``
    is set, and otherwise scales with the distance to the observation.
    """

    name = "gaussian"

    def __init__(
        self,
        obs_std: float = 1.0,
        process_std: float = 0.0,
        prior_mean: float = 0.0,
        prior_std: float = 1.0,
        proposal_std: Optional[float] = None,
        gamma: float = 0.9,
    ):
        self.obs_std = obs_std
        self.process_std = process_std
        self.prior_mean = prior_mean
        self.prior_std = prior_std
        self.proposal_std = proposal_std
        self.gamma = gamma

    def initial_states(self, n, rng):
        return rng.normal(self.prior_mean, self.prior_std, size=(n, 1))

    def step(self, states, actions, rng):
        states = np.atleast_2d(states)
        n = len(states)
        successors = states + self.process_std * rng.normal(size=(n, 1))
        observations = successors[:, 0] + self.obs_std * rng.normal(size=n)
        return StepResult(successors, observations, np.zeros(n))

    def obs_density(self, observation, states, action):
        o = float(np.asarray(observation).reshape(-1)[0])
        return norm.pdf(o, loc=np.atleast_2d(states)[:, 0], scale=self.obs_std)

    def obs_keys(self, observations):
        return np.floor(np.asarray(observations, dtype=float) / 0.5)

    def actions(self):
        return [0]

    def discount(self):
        return self.gamma

    def is_terminal(self, states):
        return np.zeros(len(np.atleast_2d(states)), dtype=bool)

    def propose_mutation(self, states, observation, action, rng, sigma_scale):
        states = np.atleast_2d(states)
        n = len(states)
        x = states[:, 0]
        if self.proposal_std is not None:
            candidates = x + self.proposal_std * rng.normal(size=n)
            return Proposal(candidates[:, None], np.ones(n), np.ones(n))
        o = float(np.asarray(observation).reshape(-1)[0])
        sigma = np.maximum(sigma_scale * np.abs(x - o), 1e-3)
        candidates = x + sigma * rng.normal(size=n)
        new_sigma = np.maximum(sigma_scale * np.abs(candidates - o), 1e-3)
        return Proposal(
            candidates[:, None],
            norm.pdf(candidates, loc=x, scale=sigma),
            norm.pdf(x, loc=candidates, scale=new_sigma),
        )

    def mdp_value(self, states):
        return np.zeros(len(np.atleast_2d(states)))


class TableModel(PomdpModel):
    """
    Deterministic fully observable MDP over integer states.

    The observation is the successor state itself.
    """

    name = "table"

    def __init__(self, transitions, rewards, gamma: float = 0.9, start: int = 0):
        self.transitions = np.asarray(transitions, dtype=int)
        self.rewards = np.asarray(rewards, dtype=float)
        self.gamma = gamma
        self.start = start
        self.values = value_iteration(self.transitions, self.rewards, gamma)

    def initial_states(self, n, rng):
        return np.full((n, 1), self.start, dtype=int)

    def step(self, states, actions, rng):
        s = np.atleast_2d(states)[:, 0]
        actions = np.broadcast_to(np.asarray(actions), s.shape)
        successors = self.transitions[s, actions]
        return StepResult(successors[:, None], successors.copy(), self.rewards[s, actions])

    def obs_density(self, observation, states, action):
        o = int(np.asarray(observation).reshape(-1)[0])
        return (np.atleast_2d(states)[:, 0] == o).astype(float)

    def actions(self):
        return list(range(self.transitions.shape[1]))

    def discount(self):
        return self.gamma

    def is_terminal(self, states):
        return np.zeros(len(np.atleast_2d(states)), dtype=bool)

    def mdp_value(self, states):
        return self.values[np.atleast_2d(states)[:, 0]]


class BanditModel(PomdpModel):
    """Single state; action 0 pays 1, every other action pays 0."""

    name = "bandit"

    def __init__(self, n_actions: int = 2, gamma: float = 0.5):
        self.n_actions = n_actions
        self.gamma = gamma

    def initial_states(self, n, rng):
        return np.zeros((n, 1))

    def step(self, states, actions, rng):
        states = np.atleast_2d(states)
        n = len(states)
        actions = np.broadcast_to(np.asarray(actions), (n,))
        return StepResult(states.copy(), np.zeros(n), (actions == 0).astype(float))

    def obs_density(self, observation, states, action):
        return np.ones(len(np.atleast_2d(states)))

    def actions(self):
        return list(range(self.n_actions))

    def discount(self):
        return self.gamma

    def is_terminal(self, states):
        return np.zeros(len(np.atleast_2d(states)), dtype=bool)


class LikelihoodTableModel(PomdpModel):
    """
    Static integer states whose likelihood is read from a table.

    Mutation jumps to one of the other states uniformly, a symmetric kernel.
    """

    name = "likelihood-table"

    def __init__(self, likelihood):
        self.likelihood = np.asarray(likelihood, dtype=float)

    def initial_states(self, n, rng):
        return rng.integers(len(self.likelihood), size=(n, 1))

    def step(self, states, actions, rng):
        states = np.atleast_2d(states)
        n = len(states)
        return StepResult(states.copy(), states[:, 0].copy(), np.zeros(n))

    def obs_density(self, observation, states, action):
        return self.likelihood[np.atleast_2d(states)[:, 0]]

    def actions(self):
        return [0]

    def discount(self):
        return 0.9

    def is_terminal(self, states):
        return np.zeros(len(np.atleast_2d(states)), dtype=bool)

    def propose_mutation(self, states, observation, action, rng, sigma_scale):
        states = np.atleast_2d(states)
        n = len(states)
        k = len(self.likelihood)
        shift = rng.integers(1, k, size=n)
        candidates = (states[:, 0] + shift) % k
        density = np.full(n, 1.0 / (k - 1))
        return Proposal(candidates[:, None], density, density)


class RandomPomdp(PomdpModel):
    """
    Small discrete POMDP whose tables are drawn from ``rng``.

    States, actions and observations are integers. Mutation jumps uniformly
    to one of the other states, a symmetric kernel.
    """

    name = "random"

    def __init__(
        self,
        rng: np.random.Generator,
        n_states: int = 3,
        n_actions: int = 2,
        n_observations: int = 2,
        gamma: float = 0.9,
    ):
        self.transitions = rng.dirichlet(np.ones(n_states), size=(n_states, n_actions))
        self.emissions = rng.dirichlet(np.ones(n_observations), size=(n_actions, n_states))
        self.rewards = rng.uniform(-1.0, 1.0, size=(n_states, n_actions))
        self.gamma = gamma

    @property
    def n_states(self) -> int:
        return len(self.rewards)

    def initial_states(self, n, rng):
        return rng.integers(self.n_states, size=(n, 1))

    def step(self, states, actions, rng):
        s = np.atleast_2d(states)[:, 0]
        actions = np.broadcast_to(np.asarray(actions), s.shape)
        successors = _sample_rows(self.transitions[s, actions], rng)
        observations = _sample_rows(self.emissions[actions, successors], rng)
        return StepResult(successors[:, None], observations, self.rewards[s, actions])

    def obs_density(self, observation, states, action):
        o = int(np.asarray(observation).reshape(-1)[0])
        return self.emissions[action, np.atleast_2d(states)[:, 0], o]

    def actions(self):
        return list(range(self.rewards.shape[1]))

    def discount(self):
        return self.gamma

    def is_terminal(self, states):
        return np.zeros(len(np.atleast_2d(states)), dtype=bool)

    def propose_mutation(self, states, observation, action, rng, sigma_scale):
        states = np.atleast_2d(states)
        n = len(states)
        shift = rng.integers(1, self.n_states, size=n)
        candidates = (states[:, 0] + shift) % self.n_states
        density = np.full(n, 1.0 / (self.n_states - 1))
        return Proposal(candidates[:, None], density, density)


def _sample_rows(probabilities: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """One categorical draw per row of a probability table."""
    cumulative = np.cumsum(probabilities, axis=1)
    u = rng.uniform(size=len(probabilities))
    return np.minimum((cumulative < u[:, None]).sum(axis=1), probabilities.shape[1] - 1)


def value_iteration(transitions, rewards, gamma, tol=1e-13) -> np.ndarray:
    """Optimal values of a deterministic MDP given as (S, A) tables."""
    values = np.zeros(len(rewards))
    while True:
        updated = (rewards + gamma * values[transitions]).max(axis=1)
        if np.max(np.abs(updated - values)) < tol:
            return updated
        values = updated

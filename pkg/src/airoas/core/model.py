from abc import ABC, abstractmethod
from typing import Hashable, NamedTuple, Sequence, Union

import numpy as np

Action = int
ActionBatch = Union[int, np.ndarray]


class StepResult(NamedTuple):
    """
    Outcome of simulating a batch of states forward one step.

    Attributes:
        states (np.ndarray): Successor states, one row per input state.
        observations (np.ndarray): Sampled observations, one row (or scalar) per input state.
        rewards (np.ndarray): Immediate rewards, shape (N,).
    """

    states: np.ndarray
    observations: np.ndarray
    rewards: np.ndarray


class Proposal(NamedTuple):
    """
    Metropolis-Hastings proposal for a batch of particles.

    Attributes:
        candidates (np.ndarray): Proposed states, same shape as the input states.
        forward_density (np.ndarray): q(candidate | state), shape (N,).
        reverse_density (np.ndarray): q(state | candidate), shape (N,).
    """

    candidates: np.ndarray
    forward_density: np.ndarray
    reverse_density: np.ndarray


class PomdpModel(ABC):
    """
    Abstract generative POMDP.

    States are rows of a 2D numpy array, so every method works on a batch of
    particles at once; a single state is a batch of one. A terminal state must
    yield zero reward and transition to itself under every action.
    """

    name: str = "pomdp"

    @abstractmethod
    def initial_states(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """
        Sample ``n`` states from the initial belief.

        Args:
            n (int): Number of states.
            rng (np.random.Generator): Random stream.

        Returns:
            np.ndarray: Array of shape (n, state_dim).
        """

    def initial_state(self, rng: np.random.Generator) -> np.ndarray:
        """Sample a single state from the initial belief."""
        return self.initial_states(1, rng)[0]

    @abstractmethod
    def step(
        self, states: np.ndarray, actions: ActionBatch, rng: np.random.Generator
    ) -> StepResult:
        """
        Simulate one transition for every row of ``states``.

        Args:
            states (np.ndarray): Batch of states.
            actions (int or np.ndarray): One action for the whole batch, or one per row.
            rng (np.random.Generator): Random stream.

        Returns:
            StepResult: Successor states, observations and rewards.
        """

    @abstractmethod
    def obs_density(
        self, observation, states: np.ndarray, action: Action
    ) -> np.ndarray:
        """
        Density (or mass) p(o | s', a) of one observation for every successor state.

        Returns:
            np.ndarray: Nonnegative finite values, shape (N,).
        """

    def obs_densities(
        self, observations: np.ndarray, states: np.ndarray, action: Action
    ) -> np.ndarray:
        """
        Densities of several observations for every successor state.

        Domains with a closed-form density override this with a single
        broadcast evaluation.

        Args:
            observations (np.ndarray): G observations, one row (or scalar) each.
            states (np.ndarray): Batch of N successor states.
            action (Action): Action that produced the states.

        Returns:
            np.ndarray: Shape (G, N); row g is ``obs_density(observations[g], states, action)``.
        """
        rows = [self.obs_density(o, states, action) for o in observations]
        return np.stack(rows) if rows else np.zeros((0, len(states)))

    def obs_keys(self, observations: np.ndarray) -> np.ndarray:
        """
        Grouping keys for a batch of observations; identity for discrete spaces.
        """
        return np.asarray(observations)

    def obs_key(self, observation) -> Hashable:
        """Hashable grouping key of a single observation."""
        key = self.obs_keys(np.asarray(observation)[None, ...])[0]
        return tuple(np.atleast_1d(key).tolist())

    @abstractmethod
    def actions(self) -> Sequence[Action]:
        """Ordered list of action indices."""

    def action_name(self, action: Action) -> str:
        return str(action)

    @abstractmethod
    def discount(self) -> float:
        """Discount factor in (0, 1)."""

    @abstractmethod
    def is_terminal(self, states: np.ndarray) -> np.ndarray:
        """Boolean terminal flag per row."""

    def propose_mutation(
        self,
        states: np.ndarray,
        observation,
        action: Action,
        rng: np.random.Generator,
        sigma_scale: float,
    ) -> Proposal:
        """
        Propose a Metropolis-Hastings move for every particle.

        The default proposal keeps every state where it is.
        """
        n = len(states)
        return Proposal(states.copy(), np.ones(n), np.ones(n))

    def mdp_value(self, states: np.ndarray) -> np.ndarray:
        """
        Optimal fully observable value of every state.

        Raises:
            NotImplementedError: If the domain has no MDP oracle.
        """
        raise NotImplementedError(f"{self.name} has no MDP value oracle")

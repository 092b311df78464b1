import numpy as np
from scipy.stats import norm

from ..constants import MUTATION_SIGMA_FLOOR, DomainName
from ..core.model import PomdpModel, Proposal, StepResult
from .config import LightDarkParams

LEFT, RIGHT, DECLARE = 0, 1, 2
ACTION_NAMES = ("left", "right", "declare")

TERMINAL_OBSERVATION = np.inf
"""Observation emitted by terminated states."""


class LightDark(PomdpModel):
    """
    One-dimensional light-dark navigation.

    State rows are ``[position, terminated]``. The agent moves left or right
    by a fixed step and ends the episode by declaring; observations are the
    position plus Gaussian noise that grows with the distance from the light.
    """

    name = str(DomainName.LIGHTDARK)

    def __init__(self, params: LightDarkParams = None):
        self.params = (params or LightDarkParams()).validate()

    def noise_std(self, positions) -> np.ndarray:
        p = self.params
        return p.noise_slope * np.abs(np.asarray(positions) - p.light_position) + p.noise_floor

    def in_goal(self, positions) -> np.ndarray:
        return np.abs(np.asarray(positions) - self.params.goal) <= self.params.goal_radius

    def initial_states(self, n, rng):
        p = self.params
        positions = rng.normal(p.initial_mean, p.initial_std, size=n)
        return np.column_stack([positions, np.zeros(n)])

    def step(self, states, actions, rng):
        p = self.params
        states = np.atleast_2d(np.asarray(states, dtype=float))
        n = len(states)
        actions = np.broadcast_to(np.asarray(actions), (n,))
        terminal = self.is_terminal(states)
        x = states[:, 0]

        shift = np.where(actions == LEFT, -p.step_size, np.where(actions == RIGHT, p.step_size, 0.0))
        declare = (actions == DECLARE) & ~terminal
        new_x = np.where(terminal, x, x + shift)
        new_terminal = terminal | declare

        rewards = np.where(
            declare,
            np.where(self.in_goal(x), p.declare_reward, p.declare_penalty),
            p.move_reward,
        )
        rewards = np.where(terminal, 0.0, rewards)

        noise = rng.normal(size=n) * self.noise_std(new_x)
        observations = np.where(new_terminal, TERMINAL_OBSERVATION, new_x + noise)
        successors = np.column_stack([new_x, new_terminal.astype(float)])
        return StepResult(successors, observations, rewards)

    def obs_density(self, observation, states, action):
        o = np.asarray(observation, dtype=float).reshape(-1)[:1]
        return self.obs_densities(o, states, action)[0]

    def obs_densities(self, observations, states, action):
        states = np.atleast_2d(states)
        terminal = self.is_terminal(states)
        o = np.asarray(observations, dtype=float).reshape(-1, 1)
        ended = o == TERMINAL_OBSERVATION
        x = states[:, 0]
        density = norm.pdf(np.where(ended, 0.0, o), loc=x, scale=self.noise_std(x))
        return np.where(ended, terminal, np.where(terminal, 0.0, density))

    def obs_keys(self, observations):
        return np.floor(np.asarray(observations, dtype=float) / self.params.obs_bin_width)

    def actions(self):
        return [LEFT, RIGHT, DECLARE]

    def action_name(self, action):
        return ACTION_NAMES[action]

    def discount(self):
        return self.params.discount

    def is_terminal(self, states):
        return np.atleast_2d(states)[:, 1] > 0.5

    def propose_mutation(self, states, observation, action, rng, sigma_scale):
        """
        Gaussian random walk on the position whose spread is proportional to
        the distance between the particle and the observation.

        The spread depends on the current position, so the forward and
        reverse densities differ.
        """
        states = np.atleast_2d(states)
        n = len(states)
        o = float(np.asarray(observation).reshape(-1)[0])
        if o == TERMINAL_OBSERVATION:
            return Proposal(states.copy(), np.ones(n), np.ones(n))

        terminal = self.is_terminal(states)
        x = states[:, 0]
        sigma = np.maximum(sigma_scale * np.abs(x - o), MUTATION_SIGMA_FLOOR)
        new_x = x + rng.normal(size=n) * sigma
        new_sigma = np.maximum(sigma_scale * np.abs(new_x - o), MUTATION_SIGMA_FLOOR)

        forward = norm.pdf(new_x, loc=x, scale=sigma)
        reverse = norm.pdf(x, loc=new_x, scale=new_sigma)
        candidates = states.copy()
        candidates[:, 0] = np.where(terminal, x, new_x)
        return Proposal(
            candidates,
            np.where(terminal, 1.0, forward),
            np.where(terminal, 1.0, reverse),
        )

    def mdp_value(self, states):
        """
        Value with the position known: walk straight to the goal, then declare.
        """
        p = self.params
        states = np.atleast_2d(states)
        excess = np.maximum(np.abs(states[:, 0] - p.goal) - p.goal_radius, 0.0)
        moves = np.ceil(excess / p.step_size - 1e-12)
        gamma = p.discount
        travel = p.move_reward * (1.0 - gamma**moves) / (1.0 - gamma)
        value = travel + gamma**moves * p.declare_reward
        return np.where(self.is_terminal(states), 0.0, value)


def build_lightdark(params: LightDarkParams = None) -> LightDark:
    return LightDark(params)

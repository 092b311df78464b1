from dataclasses import dataclass, field
from typing import Any, Hashable, NamedTuple, Optional

import numpy as np

from ..core.model import Action
from ..core.particles import WeightedParticleSet


@dataclass(eq=False)
class BeliefNode:
    """
    Belief node of the search tree.

    Particle arrays are read-only. Sibling nodes created by one expansion
    start from the same successor states and differ only in weights until
    annealed importance resampling replaces a node's arrays.

    Attributes:
        particles (np.ndarray): Particle states.
        weights (np.ndarray): Observation-conditioned weights.
        prior_weights (np.ndarray): Weights before the incoming observation was applied.
        depth (int): Depth in the tree, 0 at the root.
        lower (float): Lower bound l(b).
        upper (float): Upper bound u(b).
        incoming_edge (Optional[tuple[Action, Any]]): (action, observation) leading here.
        children (list[ActionNode]): One node per action once expanded.
        air_applied (bool): Whether resampling already ran at this node.
        solved (bool): Closed branch (impossible observation or zero gap).
    """

    particles: np.ndarray
    weights: np.ndarray
    prior_weights: np.ndarray
    depth: int = 0
    lower: float = 0.0
    upper: float = 0.0
    incoming_edge: Optional[tuple[Action, Any]] = None
    children: list["ActionNode"] = field(default_factory=list)
    air_applied: bool = False
    solved: bool = False

    @classmethod
    def root(cls, belief: WeightedParticleSet) -> "BeliefNode":
        return cls(belief.particles, belief.weights, belief.weights)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def gap(self) -> float:
        return self.upper - self.lower

    @property
    def belief(self) -> WeightedParticleSet:
        return WeightedParticleSet(self.particles, self.weights, degenerate=True)

    @property
    def prior_belief(self) -> WeightedParticleSet:
        return WeightedParticleSet(self.particles, self.prior_weights)

    def __repr__(self):
        return (
            f"<BeliefNode depth={self.depth} bounds=[{self.lower:.3f}, {self.upper:.3f}]"
            f" children={len(self.children)}>"
        )


class ObservationBranch(NamedTuple):
    """
    Child of an action node.

    Attributes:
        node (BeliefNode): Belief after the observation.
        probability (float): Estimated probability of the observation.
    """

    node: BeliefNode
    probability: float


@dataclass(eq=False)
class ActionNode:
    """
    Action node of the search tree.

    Attributes:
        action (Action): Action index.
        mean_immediate_reward (float): Weight-averaged immediate reward.
        lower (float): Lower bound l(b, a).
        upper (float): Upper bound u(b, a).
        children (dict[Hashable, ObservationBranch]): Branches keyed by observation key,
            in order of first appearance.
    """

    action: Action
    mean_immediate_reward: float = 0.0
    lower: float = -np.inf
    upper: float = np.inf
    children: dict[Hashable, ObservationBranch] = field(default_factory=dict)

    def __repr__(self):
        return (
            f"<ActionNode action={self.action} bounds=[{self.lower:.3f}, {self.upper:.3f}]"
            f" branches={len(self.children)}>"
        )

import logging
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Hashable, Optional, Union

import numpy as np

from ..air.resampling import AirStats, annealed_importance_resampling
from ..bounds.initializers import BoundInitializer, ParticleBounds
from ..constants import BOUND_GAP_TOLERANCE
from ..core.model import Action, PomdpModel
from ..core.particles import WeightedParticleSet, normalize_weights
from ..exceptions import ZeroTotalWeight
from .config import PlannerConfig
from .exceptions import EmptyRootBelief, NotExpanded
from .nodes import ActionNode, BeliefNode, ObservationBranch

logger = logging.getLogger(__name__)


class SearchSignal(Enum):
    """
    Signals returned by observation selection instead of a node.
    """

    SOLVED = "solved"
    """No observation branch has positive weighted excess uncertainty"""

    def __str__(self):
        return self.value


SOLVED = SearchSignal.SOLVED


def select_action(node: BeliefNode) -> ActionNode:
    """
    Optimistic action choice: the child with the largest upper bound.

    Ties go to the lowest action index.

    Raises:
        NotExpanded: If the node has no children.
    """
    if not node.children:
        raise NotExpanded(f"cannot select an action at leaf {node!r}")
    uppers = np.array([child.upper for child in node.children])
    return node.children[int(np.argmax(uppers))]


def excess_uncertainty(
    node: BeliefNode, root: BeliefNode, xi: float, gamma: float
) -> float:
    """
    Gap at ``node`` minus its depth-discounted share of the root gap.

    Returns:
        float: (u - l) - xi * (u0 - l0) / gamma ** depth
    """
    return node.gap - xi * root.gap / gamma**node.depth


def select_observation(
    anode: ActionNode, root: BeliefNode, cfg: PlannerConfig
) -> Union[BeliefNode, SearchSignal]:
    """
    Pick the observation branch with the largest probability-weighted excess uncertainty.

    Returns:
        BeliefNode or SearchSignal: The chosen child, or SOLVED when the best
        score is not positive.

    Raises:
        NotExpanded: If the action node has no branches.
    """
    if not anode.children:
        raise NotExpanded(f"action node {anode!r} has no observation branches")
    branches = list(anode.children.values())
    scores = np.array(
        [
            branch.probability
            * excess_uncertainty(branch.node, root, cfg.xi, cfg.gamma)
            for branch in branches
        ]
    )
    best = int(np.argmax(scores))
    if scores[best] <= 0:
        return SOLVED
    return branches[best].node


def _group_observations(
    model: PomdpModel, observations: np.ndarray, weights: np.ndarray
) -> tuple[list[Hashable], np.ndarray, np.ndarray]:
    """
    Group a batch of observations by key, groups in order of first appearance.

    Returns:
        tuple: (keys, representative index per group, weight share per group).
    """
    keys = np.asarray(model.obs_keys(observations))
    axis = 0 if keys.ndim > 1 else None
    _, first, inverse = np.unique(
        keys, axis=axis, return_index=True, return_inverse=True
    )
    inverse = inverse.reshape(-1)
    order = np.argsort(first, kind="stable")
    shares = np.bincount(inverse, weights=weights, minlength=len(first))
    representatives = first[order]
    group_keys = [tuple(np.atleast_1d(keys[i]).tolist()) for i in representatives]
    return group_keys, representatives, shares[order]


def _init_child_bounds(child: BeliefNode, particle_bounds: ParticleBounds):
    try:
        child.lower, child.upper = particle_bounds.evaluate(child.weights)
    except ZeroTotalWeight:
        # impossible observation; value it under the pre-observation weights
        child.lower, _ = particle_bounds.evaluate(child.prior_weights)
        child.upper = child.lower
        child.solved = True


def expand(
    node: BeliefNode,
    model: PomdpModel,
    bound_init: BoundInitializer,
    rng: np.random.Generator,
    gamma: Optional[float] = None,
) -> None:
    """
    Add one action node per action and one belief node per observation group.

    Every particle is propagated once per action. Each observation group
    gets a child holding the full successor set, reweighted by the
    likelihood of the group's observation; the likelihoods of all groups of
    an action come from one ``obs_densities`` call. The branch probability
    is the share of the node's weight whose sampled observation fell in the
    group.

    Args:
        node (BeliefNode): Leaf to expand.
        model (PomdpModel): Simulator.
        bound_init (BoundInitializer): Bounds for the new belief nodes.
        rng (np.random.Generator): Random stream.
        gamma (Optional[float]): Discount for the action bounds, ``model.discount()`` by default.

    Raises:
        ZeroTotalWeight: If the node's weights sum to zero.
    """
    gamma = model.discount() if gamma is None else gamma
    prior = np.asarray(node.weights, dtype=float)
    normalized = normalize_weights(prior)

    for a in model.actions():
        result = model.step(node.particles, a, rng)
        successors = np.array(result.states)
        successors.setflags(write=False)
        anode = ActionNode(a, float(normalized @ result.rewards))
        particle_bounds = bound_init.prepare(successors, model, rng)

        keys, representatives, shares = _group_observations(
            model, result.observations, normalized
        )
        observations = result.observations[representatives]
        likelihoods = model.obs_densities(observations, successors, a)
        for key, o, likelihood, share in zip(keys, observations, likelihoods, shares):
            child = BeliefNode(
                particles=successors,
                weights=likelihood * prior,
                prior_weights=prior,
                depth=node.depth + 1,
                incoming_edge=(a, o),
            )
            _init_child_bounds(child, particle_bounds)
            anode.children[key] = ObservationBranch(child, float(share))

        _refresh_action(anode, gamma)
        node.children.append(anode)


def _refresh_action(anode: ActionNode, gamma: float):
    lower = anode.mean_immediate_reward + gamma * sum(
        branch.probability * branch.node.lower for branch in anode.children.values()
    )
    upper = anode.mean_immediate_reward + gamma * sum(
        branch.probability * branch.node.upper for branch in anode.children.values()
    )
    anode.lower = max(anode.lower, lower)
    anode.upper = max(min(anode.upper, upper), anode.lower)


def _refresh_belief(node: BeliefNode):
    if not node.children:
        return
    lower = max(child.lower for child in node.children)
    upper = max(child.upper for child in node.children)
    node.lower = max(node.lower, lower)
    node.upper = max(min(node.upper, upper), node.lower)


def backup(path: list[tuple[BeliefNode, ActionNode]], gamma: float) -> None:
    """
    Bellman backup along a path, processed in the given (leaf to root) order.

    For each (belief, action) pair the action bounds are recomputed from
    its observation branches, then the belief bounds from all of its
    actions. Lower bounds never decrease and upper bounds never increase;
    an upper bound that would fall below its lower bound is raised to it.

    Args:
        path (list[tuple[BeliefNode, ActionNode]]): Pairs from the deepest
            belief node up to the root.
        gamma (float): Discount factor.
    """
    for node, anode in path:
        _refresh_action(anode, gamma)
        _refresh_belief(node)


@dataclass
class PlanResult:
    """
    Outcome of one planning call.

    Attributes:
        action (Action): Chosen action, argmax of the root action lower bounds.
        root (BeliefNode): Search tree.
        trials (int): Completed trials.
        elapsed (float): Wall time in seconds.
        belief_nodes (int): Belief nodes created.
        air_stats (AirStats): Resampling counters summed over the tree.
    """

    action: Action
    root: BeliefNode
    trials: int
    elapsed: float
    belief_nodes: int
    air_stats: AirStats = field(default_factory=AirStats)

    @property
    def lower(self) -> float:
        return self.root.lower

    @property
    def upper(self) -> float:
        return self.root.upper


class Planner:
    """
    Anytime bound-guided belief tree search.

    Each call to :meth:`search` builds a fresh tree from the given root
    belief and runs trials until the time budget or the trial cap runs out,
    or the root gap closes.

    Args:
        model (PomdpModel): Generative model.
        cfg (PlannerConfig): Search settings.
        rng (Optional[np.random.Generator]): Random stream; seeded from ``cfg.seed`` when omitted.
        air_enabled (Optional[bool]): Overrides ``cfg.use_air``.
    """

    def __init__(
        self,
        model: PomdpModel,
        cfg: PlannerConfig,
        rng: Optional[np.random.Generator] = None,
        air_enabled: Optional[bool] = None,
    ):
        if cfg.gamma is None:
            cfg = replace(cfg, gamma=model.discount())
        self.cfg = cfg.validate()
        self.model = model
        self.rng = rng if rng is not None else np.random.default_rng(cfg.seed)
        self.air_enabled = cfg.use_air if air_enabled is None else air_enabled
        self.bound_init = BoundInitializer.from_config(cfg.bounds)
        self._stats = AirStats()
        self._belief_nodes = 0

    def plan(self, root_belief: WeightedParticleSet) -> Action:
        return self.search(root_belief).action

    def search(self, root_belief: WeightedParticleSet) -> PlanResult:
        """
        Build a tree from ``root_belief`` and pick an action.

        Raises:
            EmptyRootBelief: If the belief holds no particles.
        """
        if root_belief is None or len(root_belief) == 0:
            raise EmptyRootBelief("root belief has no particles")

        start = time.perf_counter()
        self._stats = AirStats()
        self._belief_nodes = 1
        cfg = self.cfg

        root = BeliefNode.root(root_belief)
        root.lower, root.upper = self.bound_init.bounds(root_belief, self.model, self.rng)
        self._expand(root)
        _refresh_belief(root)

        trials = 0
        while (
            root.gap > BOUND_GAP_TOLERANCE
            and time.perf_counter() - start < cfg.time_budget
            and (cfg.max_trials is None or trials < cfg.max_trials)
        ):
            progressed = self._trial(root)
            trials += 1
            if not progressed:
                # selection is deterministic on an unchanged tree
                break

        lowers = np.array([child.lower for child in root.children])
        action = root.children[int(np.argmax(lowers))].action
        elapsed = time.perf_counter() - start

        logger.info(
            f"Planned {self.model.action_name(action)} after {trials} trials in "
            f"{elapsed:.2f}s, root bounds [{root.lower:.3f}, {root.upper:.3f}]"
        )
        return PlanResult(
            action, root, trials, elapsed, self._belief_nodes, self._stats
        )

    def _trial(self, root: BeliefNode) -> bool:
        """Run one descent; returns whether the tree changed."""
        node = root
        path: list[tuple[BeliefNode, ActionNode]] = []
        progressed = False

        while True:
            if node.depth >= self.cfg.max_depth:
                progressed = progressed or node.upper != node.lower
                node.upper = node.lower
                break
            if node.is_leaf:
                if node.solved:
                    break
                progressed = True
                self._resample(node)
                if node.solved:
                    break
                self._expand(node)
                if node.solved:
                    break
                _refresh_belief(node)
                backup(path[::-1], self.cfg.gamma)

            anode = select_action(node)
            child = select_observation(anode, root, self.cfg)
            if child is SOLVED:
                break
            path.append((node, anode))
            node = child

        backup(path[::-1], self.cfg.gamma)
        return progressed

    def _resample(self, node: BeliefNode):
        if not self.air_enabled or node.air_applied or node.incoming_edge is None:
            return
        a, o = node.incoming_edge
        node.air_applied = True
        try:
            result = annealed_importance_resampling(
                node.prior_belief, o, a, self.cfg.air, self.model, self.rng, self._stats
            )
        except ZeroTotalWeight:
            logger.debug(f"Observation impossible at {node!r}, closing the branch")
            node.lower, _ = self.bound_init.bounds(node.prior_belief, self.model, self.rng)
            node.upper = node.lower
            node.solved = True
            return
        node.particles = result.particles
        node.weights = result.weights

    def _expand(self, node: BeliefNode):
        try:
            expand(node, self.model, self.bound_init, self.rng, self.cfg.gamma)
        except ZeroTotalWeight:
            logger.debug(f"Zero total weight while expanding {node!r}")
            node.children.clear()
            node.upper = node.lower
            node.solved = True
            return
        self._belief_nodes += sum(len(anode.children) for anode in node.children)


def plan(
    root_belief: WeightedParticleSet,
    model: PomdpModel,
    cfg: PlannerConfig,
    rng: Optional[np.random.Generator] = None,
) -> Action:
    """
    Plan one action with annealed importance resampling at new leaves.

    Args:
        root_belief (WeightedParticleSet): Current belief.
        model (PomdpModel): Generative model.
        cfg (PlannerConfig): Search settings.
        rng (Optional[np.random.Generator]): Random stream.

    Returns:
        Action: argmax of the root action lower bounds.

    Raises:
        EmptyRootBelief: If the belief holds no particles.
    """
    return Planner(model, cfg, rng, air_enabled=True).plan(root_belief)

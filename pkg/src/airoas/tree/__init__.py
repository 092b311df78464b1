from .config import PlannerConfig
from .exceptions import EmptyRootBelief, InvalidPlannerConfig, NotExpanded
from .nodes import ActionNode, BeliefNode, ObservationBranch
from .planner import (
    SOLVED,
    PlanResult,
    Planner,
    SearchSignal,
    backup,
    excess_uncertainty,
    expand,
    plan,
    select_action,
    select_observation,
)

__all__ = [
    "SOLVED",
    "ActionNode",
    "BeliefNode",
    "EmptyRootBelief",
    "InvalidPlannerConfig",
    "NotExpanded",
    "ObservationBranch",
    "PlanResult",
    "Planner",
    "PlannerConfig",
    "SearchSignal",
    "backup",
    "excess_uncertainty",
    "expand",
    "plan",
    "select_action",
    "select_observation",
]

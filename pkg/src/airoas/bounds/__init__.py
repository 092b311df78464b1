from .config import BoundKind, BoundsConfig, BoundSpec
from .initializers import (
    BoundEstimator,
    BoundInitializer,
    FixedActionRollout,
    FixedValue,
    MdpApprox,
    ParticleBounds,
    fixed_action_rollout_lower,
    fixed_bounds,
    mdp_upper,
)

__all__ = [
    "BoundEstimator",
    "BoundInitializer",
    "BoundKind",
    "BoundSpec",
    "BoundsConfig",
    "FixedActionRollout",
    "FixedValue",
    "MdpApprox",
    "ParticleBounds",
    "fixed_action_rollout_lower",
    "fixed_bounds",
    "mdp_upper",
]

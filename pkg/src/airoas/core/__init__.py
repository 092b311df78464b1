from .model import Action, PomdpModel, Proposal, StepResult
from .particles import (
    WeightedParticleSet,
    ess,
    normalize_weights,
    systematic_indices,
    systematic_resample,
)

__all__ = [
    "Action",
    "PomdpModel",
    "Proposal",
    "StepResult",
    "WeightedParticleSet",
    "ess",
    "normalize_weights",
    "systematic_indices",
    "systematic_resample",
]

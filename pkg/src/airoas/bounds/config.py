from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from ..constants import DEFAULT_ROLLOUT_HORIZON


class BoundKind(Enum):
    """
    Ways of initialising one side of a leaf's value bounds.
    """

    FIXED = "fixed"
    """Constant value independent of the belief"""
    ROLLOUT = "rollout"
    """Best fixed-action policy, simulated from every particle"""
    MDP = "mdp"
    """Fully observable value of every particle"""

    def __str__(self):
        return self.value


@dataclass
class BoundSpec:
    """
    Settings for one side (lower or upper) of the bound initializer.

    Attributes:
        kind (BoundKind): Which estimator to use.
        value (Optional[float]): Constant for ``FIXED``.
        horizon (int): Rollout length for ``ROLLOUT``.
        actions (Optional[list[int]]): Candidate fixed actions for ``ROLLOUT``;
            every action when None.
    """

    kind: BoundKind = BoundKind.FIXED
    value: Optional[float] = None
    horizon: int = DEFAULT_ROLLOUT_HORIZON
    actions: Optional[list[int]] = None

    @classmethod
    def from_dict(cls, data: dict) -> "BoundSpec":
        return cls(
            kind=BoundKind(data.get("kind", "fixed")),
            value=data.get("value"),
            horizon=int(data.get("horizon", DEFAULT_ROLLOUT_HORIZON)),
            actions=data.get("actions"),
        )

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value}
        if self.kind is BoundKind.FIXED:
            data["value"] = self.value
        if self.kind is BoundKind.ROLLOUT:
            data["horizon"] = self.horizon
            data["actions"] = self.actions
        return data


@dataclass
class BoundsConfig:
    """
    Lower and upper bound settings for new belief nodes.

    Attributes:
        lower (BoundSpec): Lower bound estimator.
        upper (BoundSpec): Upper bound estimator.
    """

    lower: BoundSpec = field(default_factory=lambda: BoundSpec(value=-11.0))
    upper: BoundSpec = field(default_factory=lambda: BoundSpec(value=11.0))

    @classmethod
    def fixed(cls, lo: float, hi: float) -> "BoundsConfig":
        return cls(BoundSpec(value=lo), BoundSpec(value=hi))

    @classmethod
    def from_dict(cls, data: dict) -> "BoundsConfig":
        """Build from a mapping; a missing side keeps its default."""
        defaults = cls()
        return cls(
            lower=BoundSpec.from_dict(data["lower"]) if "lower" in data else defaults.lower,
            upper=BoundSpec.from_dict(data["upper"]) if "upper" in data else defaults.upper,
        )

    def to_dict(self) -> dict:
        return {"lower": self.lower.to_dict(), "upper": self.upper.to_dict()}

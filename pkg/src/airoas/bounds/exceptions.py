from typing import Optional

from ..exceptions import AiroasError


class InvalidBounds(AiroasError):
    """
    Raised when a fixed bound pair is missing a value or has its lower value
    above its upper value.

    Attributes:
        lower (Optional[float]): Requested lower value.
        upper (Optional[float]): Requested upper value.
    """

    def __init__(
        self,
        lower: Optional[float],
        upper: Optional[float],
        message: str = "lower exceeds upper",
    ):
        super().__init__(f"Invalid bounds ({lower}, {upper}): {message}")
        self.lower = lower
        self.upper = upper


class UnsupportedBound(AiroasError):
    """
    Raised when a bound initializer needs a capability the domain lacks,
    e.g. the MDP approximation on a domain without an MDP value oracle.
    """

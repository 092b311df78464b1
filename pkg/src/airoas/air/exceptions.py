from ..exceptions import AiroasError


class InvalidK(AiroasError):
    """
    Raised when a tempering schedule is requested with fewer than two steps.

    Attributes:
        k (int): The rejected number of steps.

    Args:
        k (int): The rejected number of steps.
    """

    def __init__(self, k: int):
        super().__init__(f"Tempering schedule needs K >= 2, got {k}")
        self.k = k


class InvalidAirConfig(AiroasError):
    """
    Raised when a tempering schedule, a tempering step or an AirConfig
    violates its invariants (endpoints, monotonicity, r* < 1, ...).
    """

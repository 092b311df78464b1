class AiroasError(Exception):
    """
    Base exception for all errors raised by the airoas library.

    All custom exceptions in this library inherit from this class,
    allowing users to catch all library-specific errors with a single except block.
    """


class ZeroTotalWeight(AiroasError):
    """
    Raised when a particle set has no weight left to normalise.

    This signals full particle degeneracy: every particle was assigned zero
    likelihood for the observation at hand.

    Attributes:
        n_particles (int): Size of the degenerate particle set.
        message (str): Details about where the collapse happened.

    Args:
        n_particles (int): Size of the degenerate particle set.
        message (str): Description of the collapse.
    """

    def __init__(self, n_particles: int, message: str = "total weight is zero"):
        super().__init__(f"{n_particles} particles: {message}")
        self.n_particles = n_particles
        self.message = message


class InvalidParticleSet(AiroasError):
    """
    Raised when particles and weights are inconsistent (length mismatch,
    negative or non-finite weights, empty set).
    """

from enum import Enum

DEFAULT_TEMPERING_STEPS = 100
DEFAULT_R_STAR = 2.0
DEFAULT_XI = 0.95
DEFAULT_TIME_BUDGET = 5.0
DEFAULT_MAX_DEPTH = 90
DEFAULT_PARTICLES = 1000
DEFAULT_MUTATION_SIGMA_SCALE = 0.5
MUTATION_SIGMA_FLOOR = 1e-3
DEFAULT_ESS_THRESHOLD_FRACTION = 0.5
DEFAULT_ROLLOUT_HORIZON = 40

R_STAR_GRID = (2.0, 3.0, 5.0, 10.0, 20.0)
"""Union of the two r* grids used for tuning (2, 3, 5, 10 and 2, 5, 10, 20)."""

ABLATION_PARTICLE_COUNTS = (100, 200, 500, 1000, 2000)

BOUND_GAP_TOLERANCE = 1e-9


class DomainName(Enum):
    """
    Benchmark domains shipped with the library.
    """

    LIGHTDARK = "lightdark"
    """1D continuous navigation with position-dependent observation noise"""
    TAG = "tag"
    """29-cell Tag with a fleeing opponent"""
    LASERTAG = "lasertag"
    """7x11 Tag variant observed only through 8 laser range readings"""
    ROCKSAMPLE = "rocksample"
    """Grid exploration with noisy long-range rock sensing"""

    def __str__(self):
        return self.value


class SolverName(Enum):
    """
    Planner variants the harness can run.
    """

    AIROAS = "airoas"
    """Bound-guided belief tree search with annealed importance resampling"""
    NO_AIR = "no_air"
    """Same search with the resampling pass disabled at leaves"""

    def __str__(self):
        return self.value

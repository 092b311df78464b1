from ..exceptions import AiroasError


class NotExpanded(AiroasError):
    """
    Raised when selection is attempted on a node that has no children yet.
    """


class EmptyRootBelief(AiroasError):
    """
    Raised when planning is requested from a belief with no particles.
    """


class InvalidPlannerConfig(AiroasError):
    """
    Raised when a PlannerConfig violates its invariants (xi outside (0, 1),
    max_depth < 1, nonpositive time budget, ...).
    """

from ..exceptions import AiroasError


class InvalidSirConfig(AiroasError):
    """
    Raised when the resampling threshold is outside (0, 1].
    """

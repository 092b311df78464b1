from .config import SirConfig
from .exceptions import InvalidSirConfig
from .sir import air_update, plan_no_air, sir_update

__all__ = [
    "InvalidSirConfig",
    "SirConfig",
    "air_update",
    "plan_no_air",
    "sir_update",
]

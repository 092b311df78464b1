import logging
from typing import Callable, Union

from ..constants import DomainName
from ..core.model import PomdpModel
from .config import LaserTagParams, LightDarkParams, RockSampleParams, TagParams
from .exceptions import UnknownDomain
from .lasertag import build_lasertag
from .lightdark import build_lightdark
from .rocksample import build_rocksample
from .tag import build_tag

logger = logging.getLogger(__name__)

DOMAINS: dict[DomainName, tuple[type, Callable]] = {
    DomainName.LIGHTDARK: (LightDarkParams, build_lightdark),
    DomainName.TAG: (TagParams, build_tag),
    DomainName.LASERTAG: (LaserTagParams, build_lasertag),
    DomainName.ROCKSAMPLE: (RockSampleParams, build_rocksample),
}


def domain_name(name: Union[str, DomainName]) -> DomainName:
    """
    Raises:
        UnknownDomain: If ``name`` is not a registered domain.
    """
    try:
        return DomainName(str(name).lower())
    except ValueError as e:
        raise UnknownDomain(str(name), f"expected one of {[str(d) for d in DomainName]}") from e


def build_model(name: Union[str, DomainName], params=None) -> PomdpModel:
    """
    Build a domain from its name and parameters.

    Args:
        name (str or DomainName): Domain name.
        params (dict or params dataclass, optional): Domain parameters; defaults when None.

    Returns:
        PomdpModel: The domain.

    Raises:
        UnknownDomain: If the name is not registered.
        InvalidDomainParams: If the parameters are invalid.
    """
    domain = domain_name(name)
    params_type, builder = DOMAINS[domain]
    if not isinstance(params, params_type):
        params = params_type.from_dict(params)
    logger.debug(f"Building {domain} with {params}")
    return builder(params)

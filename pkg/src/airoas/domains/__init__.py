from .config import LaserTagParams, LightDarkParams, RockSampleParams, TagParams
from .exceptions import InvalidDomainParams, UnknownDomain
from .grid import GridMap
from .lasertag import LaserTag, build_lasertag
from .lightdark import LightDark, build_lightdark
from .registry import build_model, domain_name
from .rocksample import RockSample, build_rocksample
from .tag import Tag, build_tag

__all__ = [
    "GridMap",
    "InvalidDomainParams",
    "LaserTag",
    "LaserTagParams",
    "LightDark",
    "LightDarkParams",
    "RockSample",
    "RockSampleParams",
    "Tag",
    "TagParams",
    "UnknownDomain",
    "build_lasertag",
    "build_lightdark",
    "build_model",
    "build_rocksample",
    "build_tag",
    "domain_name",
]

import pytest

from airoas.constants import DomainName
from airoas.domains import (
    InvalidDomainParams,
    LaserTag,
    LightDark,
    LightDarkParams,
    RockSample,
    Tag,
    UnknownDomain,
    build_model,
    domain_name,
)


@pytest.mark.parametrize(
    "name,expected_type",
    [
        ("lightdark", LightDark),
        ("LightDark", LightDark),
        ("TAG", Tag),
        (DomainName.LASERTAG, LaserTag),
        ("rocksample", RockSample),
    ],
)
def test_build_model(name, expected_type):
    """Names are matched case-insensitively."""
    params = {"size": 5, "n_rocks": 2} if expected_type is RockSample else None
    assert isinstance(build_model(name, params), expected_type)


def test_domain_name_unknown():
    with pytest.raises(UnknownDomain) as exc_info:
        domain_name("pacman")
    assert exc_info.value.name == "pacman"
    assert "lightdark" in exc_info.value.message


def test_build_model_rejects_unknown_fields():
    with pytest.raises(InvalidDomainParams, match="bogus"):
        build_model("lightdark", {"bogus": 1})


def test_build_model_validates_params():
    with pytest.raises(InvalidDomainParams):
        build_model("lightdark", {"step_size": -1.0})


def test_build_model_accepts_params_dataclass():
    params = LightDarkParams(step_size=0.5)
    model = build_model("lightdark", params)
    assert model.params is params


def test_build_model_applies_dict_params():
    model = build_model("tag", {"flee_probability": 0.6})
    assert model.params.flee_probability == 0.6

import pytest

from airoas.utils.validation import (
    in_open_unit_interval,
    is_valid_count_list,
    parse_count_list,
    parse_float_list,
)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("100", True),
        ("100,200,500", True),
        ("1,2000", True),
        ("", False),
        ("0", False),
        ("100,0", False),
        ("-100", False),
        ("+100", False),
        ("100, 200", False),
        ("100,", False),
        (",100", False),
        ("1e3", False),
        ("100.0", False),
        ("010", False),
    ],
)
def test_is_valid_count_list(text, expected):
    """Test that is_valid_count_list returns the expected result for various inputs."""
    assert is_valid_count_list(text) == expected


def test_parse_count_list():
    assert parse_count_list("100,200,500") == [100, 200, 500]


def test_parse_count_list_invalid():
    with pytest.raises(ValueError):
        parse_count_list("100,,200")


@pytest.mark.parametrize(
    "text,expected",
    [("2", [2.0]), ("2,3.5,10", [2.0, 3.5, 10.0]), ("0.5", [0.5])],
)
def test_parse_float_list(text, expected):
    assert parse_float_list(text) == expected


@pytest.mark.parametrize("text", ["", "0", "2,0", "-1", "a,b", "2,,3", "1..2", "2, 3"])
def test_parse_float_list_invalid(text):
    with pytest.raises(ValueError):
        parse_float_list(text)


@pytest.mark.parametrize(
    "value,expected",
    [(0.5, True), (0.95, True), (0.0, False), (1.0, False), (-0.1, False)],
)
def test_in_open_unit_interval(value, expected):
    assert in_open_unit_interval(value) == expected

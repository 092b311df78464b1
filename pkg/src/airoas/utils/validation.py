import re


def is_valid_count_list(text: str) -> bool:
    """
    Validate a comma separated list of positive integers, e.g. "100,200,500".

    Rules:
        - One or more integers separated by commas
        - No zero, sign, spaces or trailing comma
    """
    if not text:
        return False
    return bool(re.match(r"^[1-9][0-9]*(,[1-9][0-9]*)*$", text))


def parse_count_list(text: str) -> list[int]:
    """
    Parse a comma separated list of positive integers.

    Raises:
        ValueError: If the text is not a valid count list.
    """
    if not is_valid_count_list(text):
        raise ValueError(f"Invalid count list '{text}'")
    return [int(part) for part in text.split(",")]


def parse_float_list(text: str) -> list[float]:
    """
    Parse a comma separated list of positive reals, e.g. "2.0,5,10".

    Raises:
        ValueError: If any entry is not a positive number.
    """
    if not text or not re.match(r"^[0-9.]+(,[0-9.]+)*$", text):
        raise ValueError(f"Invalid value list '{text}'")
    values = [float(part) for part in text.split(",")]
    if any(v <= 0 for v in values):
        raise ValueError(f"Invalid value list '{text}'")
    return values


def in_open_unit_interval(value: float) -> bool:
    return 0.0 < value < 1.0

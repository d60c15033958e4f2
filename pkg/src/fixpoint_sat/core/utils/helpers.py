import logging
import re
import time
from itertools import product

logger = logging.getLogger(__name__)

_RANGE = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")


def parse_range(text: str) -> list[int]:
    """
    Parse a parameter range.

    Accepted forms are an inclusive interval `a..b`, a list `a,b,c` and a single
    integer.

    Raises:
        ValueError: If the text has none of these forms or the interval is empty.
    """
    match = _RANGE.match(text)
    if match:
        low, high = int(match.group(1)), int(match.group(2))
        if low > high:
            raise ValueError(f"Empty range '{text}'")
        return list(range(low, high + 1))
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as e:
        logger.debug(f"Rejected range '{text}': {e}")
        raise ValueError(f"Invalid range '{text}', expected a..b, a,b,c or an integer") from e


def expand_ranges(ranges: list[str]) -> list[tuple[int, ...]]:
    """Cartesian product of the parsed ranges, first range varying slowest."""
    return list(product(*(parse_range(text) for text in ranges)))


def elapsed_ms(start: float) -> float:
    """Milliseconds since `start`, a `time.monotonic()` reading."""
    return (time.monotonic() - start) * 1000.0

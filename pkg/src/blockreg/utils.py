"""Exact combinatorial helpers shared by the blockreg modules."""

import itertools
import math
import re
from typing import Iterator, List, Sequence, Tuple

from blockreg.errors import ValidationError


def _require_int(value: int, name: str) -> None:
    # bool is an int subclass; reject it along with floats
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")


def binomial(x: int, k: int) -> int:
    """
    Polynomial binomial coefficient x(x-1)...(x-k+1)/k!.

    Defined for every integer x; for x < 0 this is (-1)^k C(k-x-1, k).
    Returns 0 for k < 0.
    """
    _require_int(x, "x")
    _require_int(k, "k")
    if k < 0:
        return 0
    if x >= 0:
        return math.comb(x, k)
    return (-1) ** k * math.comb(k - x - 1, k)


def convolve(left: Sequence[int], right: Sequence[int]) -> Tuple[int, ...]:
    """Coefficients of the product of two polynomials given lowest degree first."""
    if not left or not right:
        return ()
    out = [0] * (len(left) + len(right) - 1)
    for i, a in enumerate(left):
        if a == 0:
            continue
        for j, b in enumerate(right):
            out[i + j] += a * b
    return tuple(out)


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """
    Yield every tuple of `parts` non-negative integers summing to `total`.

    Tuples come out in lexicographic order, (0, ..., 0, total) first.
    Nothing is yielded for total < 0.
    """
    if total < 0 or parts < 1:
        return
    # stars and bars: choose the positions of parts-1 bars among total+parts-1 slots
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        previous = -1
        values: List[int] = []
        for bar in bars:
            values.append(bar - previous - 1)
            previous = bar
        values.append(total + parts - 2 - previous)
        yield tuple(values)


def lattice_box(lower: Sequence[int], upper: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Yield the integer points of the box [lower, upper] in lexicographic order."""
    return itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lower, upper)))


_VECTOR_RE = re.compile(r"^\s*(?:O\s*)?(\()?\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*(\))?\s*$")


def parse_int_vector(text: str, expected: int) -> Tuple[int, ...]:
    """
    Parse '1,-2', '(1,-2)' or 'O(1,-2)' into an integer tuple of length `expected`.

    Raises:
        ValidationError: If the text is not such a vector
    """
    match = _VECTOR_RE.match(text)
    if not match or bool(match.group(1)) != bool(match.group(3)):
        raise ValidationError.invalid_vector(text, expected)
    values = tuple(int(part) for part in match.group(2).split(","))
    if len(values) != expected:
        raise ValidationError.invalid_vector(text, expected)
    return values

from __future__ import annotations

import math
from typing import Iterator, Optional, Tuple

from src.errors import CapExceededError, InvalidDimensionError
from src.game.model import FrequencyVector

DEFAULT_MAX_COMPOSITIONS = 100_000


def composition_count(total: int, parts: int) -> int:
    if parts < 1:
        raise InvalidDimensionError(f"parts must be >= 1, got {parts}")
    if total < 0:
        raise InvalidDimensionError(f"total must be >= 0, got {total}")
    return math.comb(total + parts - 1, parts - 1)


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    counts = [total] + [0] * (parts - 1)
    while True:
        yield tuple(counts)
        # next in descending order: take one unit from the last non-zero
        # entry before the final part and gather everything after it
        pivot = next((i for i in range(parts - 2, -1, -1) if counts[i]), None)
        if pivot is None:
            return
        tail = sum(counts[pivot + 1 :])
        counts[pivot] -= 1
        counts[pivot + 1 :] = [tail + 1] + [0] * (parts - pivot - 2)


def enumerate_compositions(
    total: int,
    parts: int,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
    cap: str = "max_compositions",
) -> Tuple[FrequencyVector, ...]:
    """All ways to write ``total`` as ``parts`` non-negative integers.

    Ordered lexicographically descending, e.g. (2, 2) gives (2,0), (1,1), (0,2).
    """
    count = composition_count(total, parts)
    if limit is not None and count > limit:
        raise CapExceededError(cap, count, limit)
    return tuple(FrequencyVector(c) for c in _compositions(total, parts))


def bounded_compositions(
    total: int,
    bound: FrequencyVector,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
) -> Tuple[FrequencyVector, ...]:
    return tuple(
        c for c in enumerate_compositions(total, len(bound), limit) if bound.dominates(c)
    )

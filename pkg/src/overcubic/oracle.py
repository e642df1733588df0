"""Brute-force counts of overcubic partitions, independent of all series code."""
from __future__ import annotations

from functools import lru_cache


def _part_types(n: int) -> list[int]:
    """Sizes of the coloured part types up to n: odd sizes once, even sizes twice."""
    types = []
    for size in range(1, n + 1):
        types.extend([size] * (1 if size % 2 else 2))
    return types


def cubic_partitions(n: int):
    """Yield cubic partitions of n as tuples of (size, multiplicity) per part type."""
    types = _part_types(n)

    def walk(i, remaining, acc):
        if remaining == 0:
            yield tuple(acc)
            return
        if i == len(types):
            return
        size = types[i]
        for mult in range(remaining // size, -1, -1):
            if mult:
                acc.append((size, mult))
            yield from walk(i + 1, remaining - mult * size, acc)
            if mult:
                acc.pop()

    yield from walk(0, n, [])


@lru_cache(maxsize=None)
def overcubic_count(n: int) -> int:
    """Number of overcubic partitions of n.

    Every distinct coloured part in a cubic partition may have its first
    occurrence overlined, so each cubic partition stands for 2^(distinct) of them.
    """
    return sum(2 ** len(p) for p in cubic_partitions(n))


def bt_bruteforce(n: int) -> int:
    """Number of ordered triples of overcubic partitions with sizes summing to n."""
    total = 0
    for i in range(n + 1):
        for j in range(n - i + 1):
            total += overcubic_count(i) * overcubic_count(j) * overcubic_count(n - i - j)
    return total

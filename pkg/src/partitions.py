"""
Integer and Set Partitions
Enumerates partitions of integers and of finite sets, with the counting
helpers (d_lambda, Bell numbers, partition numbers) used across the engine
"""
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Dict, Iterator, List, Tuple

from logzero import logger

from config import config
from src.errors import GuardViolation, InputError


@dataclass(frozen=True, order=True)
class IntegerPartition:
    """A partition of an integer, parts stored weakly decreasing."""
    parts: Tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise InputError(f"partition parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise InputError(f"partition parts must be weakly decreasing: {self.parts}")

    @classmethod
    def from_parts(cls, parts) -> "IntegerPartition":
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def from_multiplicities(cls, r: Dict[int, int]) -> "IntegerPartition":
        """Build from the multiplicity form j -> r_j."""
        parts = []
        for j, count in r.items():
            if count < 0:
                raise InputError(f"negative multiplicity for part {j}")
            parts.extend([j] * count)
        return cls.from_parts(parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        """nu_lambda, the number of parts."""
        return len(self.parts)

    @property
    def multiplicities(self) -> Dict[int, int]:
        r: Dict[int, int] = {}
        for p in self.parts:
            r[p] = r.get(p, 0) + 1
        return dict(sorted(r.items()))

    def __str__(self):
        if not self.parts:
            return "()"
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@lru_cache(maxsize=None)
def _partitions_bounded(remaining: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if remaining == 0:
        return ((),)
    out = []
    for first in range(min(remaining, largest), 0, -1):
        for rest in _partitions_bounded(remaining - first, first):
            out.append((first,) + rest)
    return tuple(out)


def integer_partitions(i: int) -> List[IntegerPartition]:
    """
    All partitions of i in decreasing lexicographic order on parts.

    Args:
        i: Non-negative integer

    Returns:
        list: IntegerPartition objects, e.g. 3 -> (3), (2,1), (1,1,1)
    """
    if i < 0:
        raise InputError(f"cannot partition a negative integer: {i}")
    return [IntegerPartition(p) for p in _partitions_bounded(i, i)]


@lru_cache(maxsize=None)
def partition_count(i: int) -> int:
    """p(i) by Euler's pentagonal number recurrence."""
    if i < 0:
        return 0
    if i == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > i:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(i - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= i:
            total += sign * partition_count(i - g2)
        k += 1
    return total


def d_lambda(partition: IntegerPartition) -> int:
    """Number of set partitions of an i-set whose block sizes form the partition."""
    r = partition.multiplicities
    denominator = prod(factorial(count) * factorial(j) ** count for j, count in r.items())
    return factorial(partition.total) // denominator


@lru_cache(maxsize=None)
def bell_number(k: int) -> int:
    """Bell number B_k via the Bell triangle."""
    if k < 0:
        raise InputError(f"Bell number of negative size: {k}")
    row = [1]
    for _ in range(k):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


def set_partitions(k: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """
    Stream every partition of {1..k} exactly once.

    Blocks are tuples in increasing order and the blocks are ordered by their
    smallest element. Generation walks restricted growth strings.

    Args:
        k: Size of the ground set, 1 <= k <= SET_PARTITION_LIMIT

    Raises:
        GuardViolation: If k is outside the guarded range
    """
    limit = config.SET_PARTITION_LIMIT
    if k < 1 or k > limit:
        raise GuardViolation(
            f"set_partitions size {k} outside 1..{limit} (B_{k} too large or empty)",
            limit=limit, requested=k,
        )
    logger.debug(f"Enumerating {bell_number(k)} set partitions of a {k}-set")
    return _restricted_growth(k)


def _restricted_growth(k: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    growth = [0] * k
    maxima = [0] * k
    while True:
        blocks: List[List[int]] = [[] for _ in range(max(growth) + 1)]
        for element, block in enumerate(growth, start=1):
            blocks[block].append(element)
        yield tuple(tuple(b) for b in blocks)

        # Advance the restricted growth string
        pos = k - 1
        while pos > 0 and growth[pos] == maxima[pos - 1] + 1:
            pos -= 1
        if pos == 0:
            return
        growth[pos] += 1
        for j in range(pos + 1, k):
            growth[j] = 0
        for j in range(pos, k):
            maxima[j] = max(maxima[j - 1], growth[j])

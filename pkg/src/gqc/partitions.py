"""Canonical enumeration of the unordered bipartitions of ``n`` parties.

Each unordered split ``S|S'`` is represented once, by the block that
contains party 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import DomainError, PartitionError, ResourceError

DEFAULT_MAX_PARTIES = 16


@dataclass(frozen=True, order=True)
class Bipartition:
    """A split of parties ``0..n-1`` into ``block_s`` and its complement.

    ``block_s`` always contains party 0, so the complement never does.
    """

    block_s: tuple[int, ...]
    n: int

    def __post_init__(self):
        block = tuple(sorted(set(int(i) for i in self.block_s)))
        object.__setattr__(self, "block_s", block)
        if self.n < 2:
            raise PartitionError(f"a bipartition needs at least 2 parties, got n={self.n}")
        if not block or len(block) >= self.n:
            raise PartitionError(f"block {block} is not a nonempty proper subset of 0..{self.n - 1}")
        if block[0] < 0 or block[-1] >= self.n:
            raise PartitionError(f"block {block} has indices outside 0..{self.n - 1}")
        if block[0] != 0:
            raise PartitionError(f"block {block} must contain party 0 (canonical form)")

    @classmethod
    def from_block(cls, block, n: int) -> "Bipartition":
        """Build the canonical bipartition for either side of a split."""
        block = set(int(i) for i in block)
        if 0 not in block:
            block = set(range(n)) - block
        return cls(tuple(block), n)

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if i not in self.block_s)

    def block_dims(self, local_dims) -> tuple[int, int]:
        """Joint dimensions of ``block_s`` and of its complement."""
        d_s = 1
        for i in self.block_s:
            d_s *= local_dims[i]
        d_c = 1
        for i in self.complement:
            d_c *= local_dims[i]
        return d_s, d_c

    def label(self) -> str:
        """Serialized form used in CSV/JSON, e.g. ``"0,1|2"``."""
        return ",".join(map(str, self.block_s)) + "|" + ",".join(map(str, self.complement))

    @classmethod
    def parse(cls, text: str) -> "Bipartition":
        left, sep, right = text.partition("|")
        if not sep:
            raise PartitionError(f"cannot parse bipartition {text!r}")
        a = [int(x) for x in left.split(",") if x.strip()]
        b = [int(x) for x in right.split(",") if x.strip()]
        n = len(a) + len(b)
        if sorted(a + b) != list(range(n)):
            raise PartitionError(f"{text!r} does not split 0..{n - 1}")
        return cls.from_block(a, n)

    def __str__(self) -> str:
        return self.label()


def _check_n(n: int, max_parties: int) -> None:
    if n < 2:
        raise DomainError(f"need n >= 2 parties, got {n}")
    if n > max_parties:
        raise ResourceError(f"n={n} exceeds the party cap of {max_parties}")


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[Bipartition, ...]:
    cuts = []
    rest = range(1, n)
    for size in range(1, n):
        for others in itertools.combinations(rest, size - 1):
            cuts.append(Bipartition((0,) + others, n))
    return tuple(cuts)


def enumerate_bipartitions(n: int, max_parties: int = DEFAULT_MAX_PARTIES) -> list[Bipartition]:
    """All ``2**(n-1) - 1`` unordered bipartitions of ``n`` parties.

    Ordered by the size of the block holding party 0, then lexicographically.
    """
    _check_n(n, max_parties)
    return list(_enumerate(n))


def cardinality(n: int) -> int:
    """Number of unordered bipartitions, from the odd/even binomial formula."""
    if n < 2:
        raise DomainError(f"need n >= 2 parties, got {n}")
    if n % 2:
        return sum(comb(n, k) for k in range(1, (n - 1) // 2 + 1))
    return sum(comb(n, k) for k in range(1, (n - 2) // 2 + 1)) + comb(n, n // 2) // 2

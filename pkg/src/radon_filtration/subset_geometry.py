"""The Gel'fand space (S_n, P_s): s-element subsets of {1, ..., n}.

Subsets are bitmasks (element ``i`` is bit ``i - 1``), which makes the
colexicographic order coincide with integer order on masks.  The first
s-subset in that order is the basepoint ``{1, ..., s}``, so it lands at
rank 0 without any reordering.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import ParameterError
from .qcombinatorics import binomial

MAX_SUBSET_N = 20


@dataclass(frozen=True)
class Subset:
    mask: int
    n: int
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.n:
            raise ParameterError(f"mask {self.mask:b} not inside ground set of size {self.n}")
        object.__setattr__(self, "size", self.mask.bit_count())

    @classmethod
    def of(cls, elements: Iterable[int], n: int) -> "Subset":
        mask = 0
        for x in elements:
            if not 1 <= x <= n:
                raise ParameterError(f"element {x} outside 1..{n}")
            mask |= 1 << (x - 1)
        return cls(mask, n)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.mask >> i & 1)

    def issubset(self, other: "Subset") -> bool:
        return self.mask & ~other.mask == 0

    def to_json(self) -> list[int]:
        return list(self.elements)

    def __repr__(self) -> str:
        return f"Subset({set(self.elements) or '{}'}, n={self.n})"


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n}; ``images[i - 1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ParameterError(f"{self.images} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "Permutation":
        images = list(range(1, n + 1))
        rng.shuffle(images)
        return cls(tuple(images))

    def __call__(self, x: int) -> int:
        return self.images[x - 1]


@dataclass(frozen=True)
class SubsetLevelIndex:
    n: int
    s: int
    points: tuple[Subset, ...]
    _rank: dict = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Subset:
        return self.points[i]

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.points)

    def rank(self, x: Subset) -> int:
        return self._rank[x.mask]

    @property
    def basepoint(self) -> Subset:
        return self.points[0]


def _colex_masks(n: int, s: int) -> Iterator[int]:
    if s == 0:
        yield 0
        return
    mask, limit = (1 << s) - 1, 1 << n
    while mask < limit:
        yield mask
        # Gosper's hack: next integer with the same popcount
        low = mask & -mask
        ripple = mask + low
        mask = ripple | (((mask ^ ripple) >> 2) // low)


@lru_cache(maxsize=None)
def enumerate_level(n: int, s: int) -> SubsetLevelIndex:
    if not 0 <= s <= n:
        raise ParameterError(f"need 0 <= s <= n, got n={n}, s={s}")
    if n > MAX_SUBSET_N:
        raise ParameterError(f"n={n} exceeds the enumeration bound {MAX_SUBSET_N}")
    points = tuple(Subset(m, n) for m in _colex_masks(n, s))
    assert len(points) == binomial(n, s)
    return SubsetLevelIndex(n, s, points, {p.mask: i for i, p in enumerate(points)})


def basepoint(n: int, s: int) -> Subset:
    """X_0 = {1, ..., s}."""
    return Subset((1 << s) - 1, n)


def _check_ambient(a: Subset, b: Subset) -> None:
    if a.n != b.n:
        raise ParameterError(f"ambient sizes differ: {a.n} vs {b.n}")


def distance(x: Subset, x2: Subset) -> int:
    _check_ambient(x, x2)
    if x.size != x2.size:
        raise ParameterError(f"distance needs equal sizes, got {x.size} and {x2.size}")
    return x.size - (x.mask & x2.mask).bit_count()


def pseudo_distance(y: Subset, x: Subset) -> int:
    """|Y - X|; not symmetric."""
    _check_ambient(y, x)
    return (y.mask & ~x.mask).bit_count()


def complement(x: Subset) -> Subset:
    return Subset(((1 << x.n) - 1) ^ x.mask, x.n)


def act(g: Permutation, x: Subset) -> Subset:
    if g.n != x.n:
        raise ParameterError(f"permutation of {g.n} points acting on subsets of {x.n}")
    mask = 0
    for i in x.elements:
        mask |= 1 << (g(i) - 1)
    return Subset(mask, x.n)


def orbit_sizes(n: int, s: int) -> list[tuple[int, int]]:
    """Histogram of distances from X_0 over P_s, by exhaustive enumeration."""
    x0 = basepoint(n, s)
    counts: dict[int, int] = {}
    for x in enumerate_level(n, s):
        d = distance(x, x0)
        counts[d] = counts.get(d, 0) + 1
    return sorted(counts.items())


def permutation_of_level(g: Permutation, level: SubsetLevelIndex) -> list[int]:
    """Rank map x -> g.x on one level."""
    return [level.rank(act(g, x)) for x in level]


def subsets_of(x: Subset, size: int) -> Sequence[Subset]:
    """All subsets of ``x`` with the given size."""
    bits = [1 << (i - 1) for i in x.elements]
    out = []
    for m in _colex_masks(len(bits), size):
        mask = 0
        for i, b in enumerate(bits):
            if m >> i & 1:
                mask |= b
        out.append(Subset(mask, x.n))
    return out

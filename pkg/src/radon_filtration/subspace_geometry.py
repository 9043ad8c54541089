"""The q-analogue space (GL_n(q), V_s): subspaces of F_q^n.

A :class:`Subspace` stores its reduced row echelon basis, which is the
canonical form, together with a bitmask of all the vectors it contains.
Vectors are encoded as ``sum(v[i] * q**i)``, so containment is a mask test
and ``dim(U & W) = log_q |U & W|`` is a popcount.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .errors import LevelTooLargeError, ParameterError
from .fields import FiniteField, get_field
from .qcombinatorics import QParameter, gaussian_binomial

Row = tuple[int, ...]

MAX_LEVEL_POINTS = 2000


def _field_of(q) -> FiniteField:
    return q if isinstance(q, FiniteField) else get_field(int(q))


def rref(rows: Iterable[Sequence[int]], F: FiniteField) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        scale = inv[m[r][c]]
        m[r] = [mul[scale][x] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = neg[m[i][c]]
                m[i] = [add[x][mul[f][y]] for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _span_mask(rows: Sequence[Row], F: FiniteField, n: int) -> int:
    vectors = {tuple([0] * n)}
    for row in rows:
        multiples = [tuple(F.mul[c][x] for x in row) for c in range(1, F.q)]
        vectors |= {
            tuple(F.add[a][b] for a, b in zip(v, w)) for v in vectors for w in multiples
        }
    mask = 0
    for v in vectors:
        mask |= 1 << encode_vector(v, F.q)
    return mask


def encode_vector(v: Sequence[int], q: int) -> int:
    return sum(x * q**i for i, x in enumerate(v))


@dataclass(frozen=True)
class Subspace:
    n: int
    field: FiniteField
    rows: tuple[Row, ...]
    pivots: tuple[int, ...] = field(compare=False, repr=False)
    mask: int = field(compare=False, repr=False)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, other: "Subspace") -> bool:
        """True iff ``other`` is a subspace of ``self``."""
        return other.mask & ~self.mask == 0

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.q, "rows": [list(r) for r in self.rows]}

    def __repr__(self) -> str:
        return f"Subspace(q={self.q}, rows={[list(r) for r in self.rows]})"


def _make(rows: Sequence[Row], pivots: Sequence[int], n: int, F: FiniteField) -> Subspace:
    rows = tuple(tuple(r) for r in rows)
    return Subspace(n, F, rows, tuple(pivots), _span_mask(rows, F, n))


def canonicalize(rows: Iterable[Sequence[int]], q, n: Optional[int] = None) -> Subspace:
    """Row space of ``rows`` in canonical (RREF) form."""
    F = _field_of(q)
    rows = [list(r) for r in rows]
    if n is None:
        if not rows:
            raise ParameterError("ambient dimension needed for an empty spanning set")
        n = len(rows[0])
    for r in rows:
        if len(r) != n or any(not 0 <= x < F.q for x in r):
            raise ParameterError(f"row {r} is not a vector of F_{F.q}^{n}")
    reduced, pivots = rref(rows, F)
    return _make(reduced, pivots, n, F)


def standard_subspace(n: int, indices: Iterable[int], q) -> Subspace:
    """Span of e_i for the given 1-based indices."""
    F = _field_of(q)
    rows = [tuple(1 if c == i - 1 else 0 for c in range(n)) for i in sorted(indices)]
    return canonicalize(rows, F, n)


def basepoint(n: int, s: int, q) -> Subspace:
    """W_0 = <e_1, ..., e_s>."""
    return standard_subspace(n, range(1, s + 1), q)


def complementary_basepoint(n: int, s: int, q) -> Subspace:
    """W_0' = <e_{s+1}, ..., e_n>."""
    return standard_subspace(n, range(s + 1, n + 1), q)


@dataclass(frozen=True)
class SubspaceLevelIndex:
    n: int
    s: int
    q: int
    points: tuple[Subspace, ...]
    _rank: dict = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Subspace:
        return self.points[i]

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.points)

    def rank(self, w: Subspace) -> int:
        return self._rank[w.rows]

    @property
    def basepoint(self) -> Subspace:
        return self.points[0]


def _colex_combinations(n: int, s: int) -> list[tuple[int, ...]]:
    return sorted(itertools.combinations(range(n), s), key=lambda c: sum(1 << i for i in c))


@lru_cache(maxsize=None)
def _enumerate(n: int, s: int, F: FiniteField) -> SubspaceLevelIndex:
    points = []
    for pivots in _colex_combinations(n, s):
        pivot_set = set(pivots)
        free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivot_set]
        for values in itertools.product(range(F.q), repeat=len(free)):
            rows = [[0] * n for _ in pivots]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, c), v in zip(free, values):
                rows[i][c] = v
            points.append(_make(rows, pivots, n, F))
    return SubspaceLevelIndex(n, s, F.q, tuple(points), {w.rows: i for i, w in enumerate(points)})


def enumerate_level(n: int, s: int, q, max_points: int = MAX_LEVEL_POINTS) -> SubspaceLevelIndex:
    """All s-dimensional subspaces of F_q^n, ordered by pivot pattern (colex) then free entries."""
    F = _field_of(q)
    if not 0 <= s <= n:
        raise ParameterError(f"need 0 <= s <= n, got n={n}, s={s}")
    size = gaussian_binomial(n, s, F.q)
    if size > max_points:
        raise LevelTooLargeError(
            f"V_{s} of F_{F.q}^{n} has {size} points, above the ceiling {max_points}"
        )
    level = _enumerate(n, s, F)
    assert len(level) == size
    return level


def intersection_dim(u: Subspace, w: Subspace) -> int:
    if (u.n, u.field) != (w.n, w.field):
        raise ParameterError("subspaces live in different ambient spaces")
    count = (u.mask & w.mask).bit_count()
    d = 0
    while count > 1:
        count //= u.q
        d += 1
    return d


def sum_dim(u: Subspace, w: Subspace) -> int:
    """dim(U + W), from the rank of the stacked bases."""
    return len(rref(list(u.rows) + list(w.rows), u.field)[0])


def q_pseudo_distance(u: Subspace, w: Subspace) -> int:
    """dim U - dim(U & W)."""
    return u.dim - intersection_dim(u, w)


def q_distance(w: Subspace, w2: Subspace) -> int:
    if w.dim != w2.dim:
        raise ParameterError(f"q_distance needs equal dimensions, got {w.dim} and {w2.dim}")
    return w.dim - intersection_dim(w, w2)


def is_complement(w2: Subspace, w: Subspace) -> bool:
    if w2.dim + w.dim != w.n:
        raise ParameterError("dimensions of a complementary pair must add up to n")
    return (w2.mask & w.mask).bit_count() == 1


def enumerate_complements(w: Subspace) -> list[Subspace]:
    """All W' with W' + W = V direct, as graphs of maps into W over a coordinate complement."""
    F, n = w.field, w.n
    others = [c for c in range(n) if c not in w.pivots]
    out = []
    for coeffs in itertools.product(range(F.q), repeat=len(others) * w.dim):
        rows = []
        for a, c in enumerate(others):
            row = [0] * n
            row[c] = 1
            for i, basis_row in enumerate(w.rows):
                k = coeffs[a * w.dim + i]
                if k:
                    row = [F.add[x][F.mul[k][y]] for x, y in zip(row, basis_row)]
            rows.append(row)
        out.append(canonicalize(rows, F, n))
    return out


def complements_by_distance(n: int, s: int, q) -> list[tuple[int, int]]:
    """Histogram of complements W' of W_0 by d(W', W_0'): the exact |N_j|."""
    w0, w0p = basepoint(n, s, q), complementary_basepoint(n, s, q)
    counts: dict[int, int] = {}
    for wp in enumerate_complements(w0):
        j = q_distance(wp, w0p)
        counts[j] = counts.get(j, 0) + 1
    return sorted(counts.items())


@dataclass(frozen=True)
class InvertibleMatrix:
    entries: tuple[Row, ...]
    field: FiniteField

    def __post_init__(self) -> None:
        n = len(self.entries)
        if any(len(r) != n for r in self.entries):
            raise ParameterError("matrix must be square")
        if len(rref(self.entries, self.field)[0]) != n:
            raise ParameterError("matrix is singular")

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def random(cls, n: int, q, rng: random.Random) -> "InvertibleMatrix":
        F = _field_of(q)
        while True:
            rows = [tuple(rng.randrange(F.q) for _ in range(n)) for _ in range(n)]
            if len(rref(rows, F)[0]) == n:
                return cls(tuple(rows), F)

    def apply(self, v: Sequence[int]) -> list[int]:
        F = self.field
        out = []
        for row in self.entries:
            acc = 0
            for a, x in zip(row, v):
                acc = F.add[acc][F.mul[a][x]]
            out.append(acc)
        return out


def act(g: InvertibleMatrix, w: Subspace) -> Subspace:
    """g(W), with g acting on column vectors."""
    if g.n != w.n or g.field != w.field:
        raise ParameterError("group element and subspace live over different spaces")
    return canonicalize([g.apply(r) for r in w.rows], w.field, w.n)


def permutation_of_level(g: InvertibleMatrix, level: SubspaceLevelIndex) -> list[int]:
    return [level.rank(act(g, w)) for w in level]


def subspace_from_json(data: dict) -> Subspace:
    return canonicalize(data["rows"], QParameter(data["q"]).q, data["n"])

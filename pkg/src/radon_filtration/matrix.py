"""Dense exact matrices between indexed lattice levels.

Entries live in a numpy ``object`` array of Python ints / ``Fraction``.
Products of integer matrices take an int64 fast path only when a bound on
every accumulated sum proves there is no overflow; otherwise numpy falls
back to object arithmetic.  Either way the result is exact.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .errors import ParameterError

_INT64_SAFE = 2**62


def format_rational(x) -> str:
    """Reduced ``"num/den"`` string; integers keep an explicit ``/1``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def _as_object(a: np.ndarray) -> np.ndarray:
    if a.dtype == object:
        return a
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = int(x)
    return out


def _is_integral(a: np.ndarray) -> bool:
    return all(isinstance(x, (int, np.integer)) for x in a.flat)


def _max_abs(a: np.ndarray) -> int:
    return max((abs(int(x)) for x in a.flat), default=0)


def _level_key(level) -> tuple:
    return (type(level).__name__, level.n, level.s, getattr(level, "q", None))


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ParameterError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.size and b.size and _is_integral(a) and _is_integral(b):
        bound = _max_abs(a) * _max_abs(b) * a.shape[1]
        if bound < _INT64_SAFE:
            return _as_object(a.astype(np.int64) @ b.astype(np.int64))
    return _as_object(a) @ _as_object(b)


class ExactMatrix:
    """A matrix from ``L^2(domain)`` to ``L^2(codomain)``.

    Rows are indexed by codomain points and columns by domain points, so
    ``(T f)(x) = sum_y T[x, y] f(y)``.
    """

    __slots__ = ("entries", "domain", "codomain", "name")

    def __init__(self, entries, domain=None, codomain=None, name: str = ""):
        arr = entries if isinstance(entries, np.ndarray) else np.array(entries, dtype=object)
        arr = _as_object(arr) if arr.size else np.empty(arr.shape, dtype=object)
        if arr.ndim != 2:
            raise ParameterError("ExactMatrix needs a 2-d array")
        if domain is not None and len(domain) != arr.shape[1]:
            raise ParameterError(f"{arr.shape[1]} columns but domain has {len(domain)} points")
        if codomain is not None and len(codomain) != arr.shape[0]:
            raise ParameterError(f"{arr.shape[0]} rows but codomain has {len(codomain)} points")
        self.entries = arr
        self.domain = domain
        self.codomain = codomain
        self.name = name

    @classmethod
    def zeros(cls, rows: int, cols: int, **kw) -> "ExactMatrix":
        arr = np.empty((rows, cols), dtype=object)
        arr.fill(0)
        return cls(arr, **kw)

    @classmethod
    def identity(cls, size: int, level=None, name: str = "Id") -> "ExactMatrix":
        m = cls.zeros(size, size, domain=level, codomain=level, name=name)
        for i in range(size):
            m.entries[i, i] = 1
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __getitem__(self, key):
        return self.entries[key]

    def transpose(self, name: Optional[str] = None) -> "ExactMatrix":
        return ExactMatrix(
            self.entries.T.copy(), self.codomain, self.domain, name if name is not None else f"{self.name}^T"
        )

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if (
                self.domain is not None
                and other.codomain is not None
                and _level_key(self.domain) != _level_key(other.codomain)
            ):
                raise ParameterError(f"cannot compose {self.name} after {other.name}: levels differ")
            return ExactMatrix(
                exact_matmul(self.entries, other.entries),
                other.domain,
                self.codomain,
                f"{self.name}*{other.name}",
            )
        vec = np.array(list(other), dtype=object).reshape(-1, 1)
        return [x for x in exact_matmul(self.entries, vec)[:, 0]]

    def scaled(self, c) -> "ExactMatrix":
        return ExactMatrix(self.entries * c, self.domain, self.codomain, f"{c}*{self.name}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ParameterError(f"shape mismatch {self.shape} + {other.shape}")
        return ExactMatrix(self.entries + other.entries, self.domain, self.codomain, f"{self.name}+{other.name}")

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ParameterError(f"shape mismatch {self.shape} - {other.shape}")
        return ExactMatrix(self.entries - other.entries, self.domain, self.codomain, f"{self.name}-{other.name}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self.entries == other.entries))

    __hash__ = None

    def row_lists(self) -> list[list]:
        return self.entries.tolist()

    def column_lists(self) -> list[list]:
        return self.entries.T.tolist()

    def row_sums(self) -> list:
        return [sum(r) for r in self.entries.tolist()]

    def first_difference(self, other: "ExactMatrix") -> Optional[tuple[int, int, Any, Any]]:
        """Coordinates and values of the first differing entry, or None."""
        if self.shape != other.shape:
            return (-1, -1, self.shape, other.shape)
        diff = np.argwhere(self.entries != other.entries)
        if len(diff) == 0:
            return None
        i, j = (int(v) for v in diff[0])
        return (i, j, self.entries[i, j], other.entries[i, j])

    def proportionality(self, other: "ExactMatrix") -> Optional[Fraction]:
        """c with self == c * other, or None if no such scalar exists."""
        if self.shape != other.shape:
            return None
        c = None
        for x, y in zip(self.entries.flat, other.entries.flat):
            if y == 0:
                if x != 0:
                    return None
                continue
            r = Fraction(x) / Fraction(y)
            if c is None:
                c = r
            elif r != c:
                return None
        return c if c is not None else Fraction(0)

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_rational(x) for x in row] for row in self.entries.tolist()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExactMatrix":
        entries = [[parse_rational(x) for x in row] for row in data["entries"]]
        arr = np.empty((data["rows"], data["cols"]), dtype=object)
        for i, row in enumerate(entries):
            for j, x in enumerate(row):
                arr[i, j] = x.numerator if x.denominator == 1 else x
        return cls(arr)

    def to_matrix_market(self) -> str:
        nz = [(i, j, x) for (i, j), x in np.ndenumerate(self.entries) if x != 0]
        lines = ["%%MatrixMarket matrix coordinate rational general", f"{self.rows} {self.cols} {len(nz)}"]
        lines += [f"{i + 1} {j + 1} {format_rational(x)}" for i, j, x in nz]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_matrix_market(cls, text: str) -> "ExactMatrix":
        lines = [ln for ln in text.splitlines() if ln and not ln.startswith("%")]
        rows, cols, _ = (int(x) for x in lines[0].split())
        m = cls.zeros(rows, cols)
        for ln in lines[1:]:
            i, j, v = ln.split()
            x = parse_rational(v)
            m.entries[int(i) - 1, int(j) - 1] = x.numerator if x.denominator == 1 else x
        return m

    def __repr__(self) -> str:
        return f"ExactMatrix({self.name or '?'}, {self.rows}x{self.cols})"


def matrix_from_triplets(
    triplets: Iterable[tuple[int, int, Any]], rows: int, cols: int, **kw
) -> ExactMatrix:
    """Dense matrix assembled from (row, col, value) triplets; repeated entries add."""
    m = ExactMatrix.zeros(rows, cols, **kw)
    for i, j, v in triplets:
        m.entries[i, j] += v
    return m


def columns_to_matrix(columns: Sequence[Sequence], level=None) -> ExactMatrix:
    """Stack coordinate vectors as the columns of a matrix."""
    if not columns:
        return ExactMatrix.zeros(len(level) if level is not None else 0, 0, codomain=level)
    arr = np.empty((len(columns[0]), len(columns)), dtype=object)
    for j, col in enumerate(columns):
        arr[:, j] = list(col)
    return ExactMatrix(arr, codomain=level)

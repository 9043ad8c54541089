"""Exact ground truth for the Radon filtrations.

Nothing here uses a closed formula.  Components are built from kernels of
Radon maps pushed along the Radon chain, spherical functions come from
orthogonally projecting a basepoint delta, and eigenvalues are read off
``M_1`` acting on component bases.  All arithmetic is over the integers or
``Fraction``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional, Sequence

import numpy as np

from . import linalg
from .errors import InconsistencyError, ParameterError
from .matrix import ExactMatrix, columns_to_matrix, exact_matmul, format_rational
from .operators import (
    Geometry,
    SubspaceGeometry,
    build_adjoint,
    build_averaging,
    build_q_complement_operator,
    build_radon,
)


@dataclass
class SubspaceBasis:
    """Linearly independent vectors (as columns) in L^2 of one level."""

    level: Any
    columns: np.ndarray  # object array, shape (len(level), dim)
    label: str = ""

    @property
    def dim(self) -> int:
        return self.columns.shape[1]

    def vectors(self) -> list[list]:
        return self.columns.T.tolist()

    def as_matrix(self) -> ExactMatrix:
        return ExactMatrix(self.columns, codomain=self.level, name=self.label)


def _basis(level, vectors: Sequence[Sequence[int]], label: str, size: Optional[int] = None) -> SubspaceBasis:
    if vectors:
        cols = columns_to_matrix(vectors, level).entries
    else:
        cols = np.empty((len(level) if size is None else size, 0), dtype=object)
    return SubspaceBasis(level, cols, label)


def exact_rank(m: ExactMatrix) -> int:
    # Eliminate along the shorter side; rank is transpose invariant.
    rows = m.row_lists() if m.rows <= m.cols else m.column_lists()
    return linalg.rank(rows)


def exact_kernel(m: ExactMatrix) -> SubspaceBasis:
    """Basis of {v : M v = 0} in L^2(domain of M)."""
    vectors = linalg.kernel(m.row_lists(), m.cols)
    return _basis(m.domain, vectors, f"Ker {m.name}", m.cols)


@dataclass
class InjectivityVerdict:
    operator: str
    rank: int
    domain_dim: int
    extra: dict = field(default_factory=dict)

    @property
    def injective(self) -> bool:
        return self.rank == self.domain_dim

    def to_json(self) -> dict:
        out = {"operator": self.operator, "rank": self.rank, "domain_dim": self.domain_dim, "injective": self.injective}
        out.update(self.extra)
        return out


def certify_injectivity(op: ExactMatrix, context: Optional[dict] = None) -> InjectivityVerdict:
    return InjectivityVerdict(op.name, exact_rank(op), op.cols, dict(context or {}))


@dataclass
class Filtration:
    """Orthogonal components H^0, ..., H^s of one level, in label order."""

    geometry: Geometry
    s: int
    dual: bool
    level: Any
    components: list[SubspaceBasis]
    injectivity: list[InjectivityVerdict]

    @property
    def level_number(self) -> int:
        return self.geometry.n - self.s if self.dual else self.s

    @property
    def basepoint_rank(self) -> int:
        g = self.geometry
        point = g.dual_basepoint(self.s) if self.dual else g.basepoint(self.s)
        return self.level.rank(point)


def _require_half(g: Geometry, s: int) -> None:
    if not 0 <= 2 * s <= g.n:
        raise ParameterError(f"filtrations are built for 0 <= s <= n/2, got n={g.n}, s={s}")


def _push(columns: np.ndarray, maps: Sequence[ExactMatrix]) -> np.ndarray:
    for m in maps:
        columns = exact_matmul(m.entries, columns)
    return columns


def _ones(level) -> np.ndarray:
    arr = np.empty((len(level), 1), dtype=object)
    arr[:, 0] = 1
    return arr


@lru_cache(maxsize=64)
def filtration(g: Geometry, s: int) -> Filtration:
    """H^t = (R_{s-1} ... R_t)(Ker R_{t-1}^*) for t >= 1, H^0 = constants."""
    _require_half(g, s)
    verdicts = []
    for t in range(s):
        v = certify_injectivity(build_radon(g, t))
        verdicts.append(v)
        if not v.injective:
            raise InconsistencyError(f"{v.operator} has rank {v.rank} < {v.domain_dim}; the chain is not injective")
    level = g.level(s)
    comps = [SubspaceBasis(level, _ones(level), "H^0")]
    for t in range(1, s + 1):
        ker = exact_kernel(build_adjoint(build_radon(g, t - 1)))
        cols = _push(ker.columns, [build_radon(g, u) for u in range(t, s)])
        comps.append(SubspaceBasis(level, cols, f"H^{t}"))
    return Filtration(g, s, False, level, comps, verdicts)


@lru_cache(maxsize=64)
def dual_filtration(g: Geometry, s: int) -> Filtration:
    """Components of level n-s: constants and (R_{n-s}^* ... R_{n-t-1}^*)(Ker R_{n-t})."""
    _require_half(g, s)
    n = g.n
    verdicts = []
    for t in range(1, s + 1):
        v = certify_injectivity(build_adjoint(build_radon(g, n - t)))
        verdicts.append(v)
        if not v.injective:
            raise InconsistencyError(f"{v.operator} has rank {v.rank} < {v.domain_dim}; the chain is not injective")
    level = g.level(n - s)
    comps = [SubspaceBasis(level, _ones(level), "H^0")]
    for t in range(1, s + 1):
        ker = exact_kernel(build_radon(g, n - t))
        maps = [build_adjoint(build_radon(g, u)) for u in range(n - t - 1, n - s - 1, -1)]
        comps.append(SubspaceBasis(level, _push(ker.columns, maps), f"H^{n - t}"))
    return Filtration(g, s, True, level, comps, verdicts)


def get_filtration(g: Geometry, s: int, dual: bool = False) -> Filtration:
    return dual_filtration(g, s) if dual else filtration(g, s)


def orthogonality_witness(f: Filtration) -> Optional[tuple[int, int]]:
    """First pair of components with a nonzero inner product, or None."""
    for a in range(len(f.components)):
        for b in range(a + 1, len(f.components)):
            ca, cb = f.components[a].columns, f.components[b].columns
            if ca.shape[1] and cb.shape[1] and np.any(exact_matmul(ca.T, cb) != 0):
                return (a, b)
    return None


def eigenvalue_on_component(m: ExactMatrix, h: SubspaceBasis) -> Fraction:
    """The scalar by which M acts on H; raises if H is not inside one eigenspace."""
    image = exact_matmul(m.entries, h.columns)
    lam = None
    for j in range(h.dim):
        col = h.columns[:, j]
        i = next(i for i, x in enumerate(col) if x != 0)
        cand = Fraction(image[i, j]) / Fraction(col[i])
        if lam is None:
            lam = cand
        if cand != lam or any(image[k, j] != lam * col[k] for k in range(len(col))):
            raise InconsistencyError(f"{m.name} does not act by a scalar on {h.label}")
    if lam is None:
        raise ParameterError(f"{h.label} is the zero space")
    return lam


def _project_direct(h: SubspaceBasis, b: int) -> list[Fraction]:
    gram = exact_matmul(h.columns.T, h.columns).tolist()
    rhs = h.columns[b, :].tolist()
    coeffs = linalg.solve(gram, rhs)
    out = [Fraction(0)] * h.columns.shape[0]
    for j, c in enumerate(coeffs):
        if c:
            for i, x in enumerate(h.columns[:, j]):
                if x:
                    out[i] += c * x
    return out


@lru_cache(maxsize=64)
def basepoint_projections(g: Geometry, s: int, dual: bool = False) -> tuple[tuple[Fraction, ...], ...]:
    """Orthogonal projection of the basepoint delta onto every component.

    Each projection solves a Gram system on the component basis.  A
    component of more than half the level is handled through its
    orthogonal complement instead (delta minus the other projections),
    which is exact because the components are orthogonal and complete.
    """
    f = get_filtration(g, s, dual)
    b = f.basepoint_rank
    size = len(f.level)
    if sum(c.dim for c in f.components) != size:
        raise InconsistencyError("components do not fill the level")
    big = [t for t, c in enumerate(f.components) if 2 * c.dim > size]
    projections: list[Optional[list[Fraction]]] = [
        None if t in big else _project_direct(c, b) for t, c in enumerate(f.components)
    ]
    for t in big:
        rest = [Fraction(int(i == b)) for i in range(size)]
        for u, p in enumerate(projections):
            if u != t:
                rest = [x - y for x, y in zip(rest, p)]
        projections[t] = rest
    return tuple(tuple(p) for p in projections)


def spherical_vector(g: Geometry, s: int, t: int, dual: bool = False) -> list[Fraction]:
    """Radial function of component t, normalised to 1 at the basepoint."""
    f = get_filtration(g, s, dual)
    if not 0 <= t < len(f.components):
        raise ParameterError(f"component {t} outside 0..{len(f.components) - 1}")
    p = basepoint_projections(g, s, dual)[t]
    at_base = p[f.basepoint_rank]
    if at_base == 0:
        raise InconsistencyError(f"projection onto component {t} vanishes at the basepoint")
    return [x / at_base for x in p]


def radial_profile(g: Geometry, level, values: Sequence[Fraction], base) -> list[Fraction]:
    """Values per distance from ``base``; raises unless constant on every sphere."""
    profile: dict[int, Fraction] = {}
    for x, v in zip(level, values):
        d = g.distance(x, base)
        if profile.setdefault(d, v) != v:
            raise InconsistencyError(f"function is not radial: two values at distance {d}")
    return [profile[j] for j in range(max(profile) + 1)]


def spherical_from_projector(g: Geometry, s: int, t: int, dual: bool = False) -> list[Fraction]:
    """Oracle spherical function of component t as a list over distances j."""
    f = get_filtration(g, s, dual)
    base = f.level[f.basepoint_rank]
    return radial_profile(g, f.level, spherical_vector(g, s, t, dual), base)


@dataclass
class ComponentReport:
    t: int
    dimension: int
    expected_dimension: int
    eigenvalue: Fraction
    profile: list[Fraction]

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "dimension": self.dimension,
            "expected_dimension": self.expected_dimension,
            "eigenvalue": format_rational(self.eigenvalue),
            "profile": [format_rational(x) for x in self.profile],
        }


@dataclass
class DecompositionReport:
    family: str
    n: int
    s: int
    q: Optional[int]
    level: int
    dual: bool
    level_size: int
    components: list[ComponentReport]
    injectivity: list[InjectivityVerdict]
    orthogonal: bool
    eigenvalues_distinct: bool
    obstruction_holds: Optional[bool]

    @property
    def dims(self) -> list[int]:
        return [c.dimension for c in self.components]

    @property
    def complete(self) -> bool:
        return sum(self.dims) == self.level_size

    @property
    def consistent(self) -> bool:
        return (
            self.complete
            and self.orthogonal
            and self.eigenvalues_distinct
            and self.obstruction_holds is not False
            and all(c.dimension == c.expected_dimension for c in self.components)
            and all(v.injective for v in self.injectivity)
        )

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "s": self.s,
            "q": self.q,
            "level": self.level,
            "dual": self.dual,
            "level_size": self.level_size,
            "dims": self.dims,
            "components": [c.to_json() for c in self.components],
            "injectivity": [v.to_json() for v in self.injectivity],
            "orthogonal": self.orthogonal,
            "complete": self.complete,
            "eigenvalues_distinct": self.eigenvalues_distinct,
            "obstruction_holds": self.obstruction_holds,
            "consistent": self.consistent,
        }


def _report(g: Geometry, s: int, dual: bool) -> DecompositionReport:
    f = get_filtration(g, s, dual)
    m1 = build_averaging(g, f.level_number, 1)
    comps = []
    for t, h in enumerate(f.components):
        comps.append(
            ComponentReport(
                t,
                linalg.rank(h.columns.T.tolist(), len(f.level)),
                g.level_size(t) - g.level_size(t - 1),
                eigenvalue_on_component(m1, h),
                spherical_from_projector(g, s, t, dual),
            )
        )
    eigen = [c.eigenvalue for c in comps]
    obstruction = None
    if not dual:
        m = g.radon_multiplicity(s)
        obstruction = all(lam != -m for t, lam in enumerate(eigen) if t + s < g.n)
    return DecompositionReport(
        g.family,
        g.n,
        s,
        getattr(g, "q", None),
        f.level_number,
        dual,
        len(f.level),
        comps,
        list(f.injectivity),
        orthogonality_witness(f) is None,
        len(set(eigen)) == len(eigen),
        obstruction,
    )


def decompose_level(g: Geometry, s: int) -> DecompositionReport:
    """Filtration of level s (requires s <= n/2)."""
    return _report(g, s, dual=False)


def decompose_dual_level(g: Geometry, s: int) -> DecompositionReport:
    """Filtration of level n - s through adjoint Radon maps (requires s <= n/2)."""
    return _report(g, s, dual=True)


def complement_pairing_oracle(n: int, s: int, q: int) -> Fraction:
    """C(q)_s^*(phi_s)(W_0) with phi_s the projector spherical function of the top dual component."""
    g = SubspaceGeometry(n, int(q))
    c = build_q_complement_operator(n, s, g.q, "to_s")
    phi = spherical_vector(g, s, s, dual=True)
    row = c.entries[g.level(s).rank(g.basepoint(s))]
    return sum((Fraction(x) * y for x, y in zip(row, phi) if x), Fraction(0))

"""Intertwining operators between lattice levels, as exact matrices.

The two families share one interface (:class:`SubsetGeometry`,
:class:`SubspaceGeometry`): level enumeration, containment, distance,
basepoints and the group action.  Everything below is written once against
that interface: Radon transforms ``R_s`` and their adjoints, averaging
operators ``M_k``, complement operators, and the checks of the operator
identities relating them.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterator, Optional, Sequence

import numpy as np

from . import subset_geometry as sg
from . import subspace_geometry as vg
from .errors import ParameterError
from .matrix import ExactMatrix, matrix_from_triplets
from .qcombinatorics import QParameter, binomial, gaussian_binomial, q_int


@dataclass(frozen=True)
class SubsetGeometry:
    n: int
    family = "subset"

    def params(self) -> dict:
        return {"family": self.family, "n": self.n}

    def level(self, s: int) -> sg.SubsetLevelIndex:
        return sg.enumerate_level(self.n, s)

    def level_size(self, s: int) -> int:
        return binomial(self.n, s)

    def contains(self, small: sg.Subset, big: sg.Subset) -> bool:
        return small.issubset(big)

    def distance(self, a: sg.Subset, b: sg.Subset) -> int:
        return sg.distance(a, b)

    def pseudo_distance(self, a: sg.Subset, b: sg.Subset) -> int:
        return sg.pseudo_distance(a, b)

    def basepoint(self, s: int) -> sg.Subset:
        return sg.basepoint(self.n, s)

    def dual_basepoint(self, s: int) -> sg.Subset:
        """Basepoint of level n - s paired with X_0: its complement."""
        return sg.complement(self.basepoint(s))

    def radon_multiplicity(self, s: int) -> int:
        """Number of level-(s+1) points above a fixed level-s point."""
        return self.n - s

    def random_element(self, rng: random.Random) -> sg.Permutation:
        return sg.Permutation.random(self.n, rng)

    def permutation(self, g: sg.Permutation, s: int) -> list[int]:
        return sg.permutation_of_level(g, self.level(s))

    def paired(self, x: sg.Subset, y: sg.Subset) -> bool:
        """Complement relation between a point of level s and one of level n - s."""
        return x.mask & y.mask == 0 and x.size + y.size == self.n


@dataclass(frozen=True)
class SubspaceGeometry:
    n: int
    q: int
    family = "subspace"

    def __post_init__(self) -> None:
        QParameter(self.q)

    @property
    def field(self):
        return vg.get_field(self.q)

    def params(self) -> dict:
        return {"family": self.family, "n": self.n, "q": self.q}

    def level(self, s: int) -> vg.SubspaceLevelIndex:
        return vg.enumerate_level(self.n, s, self.q)

    def level_size(self, s: int) -> int:
        return gaussian_binomial(self.n, s, self.q)

    def contains(self, small: vg.Subspace, big: vg.Subspace) -> bool:
        return big.contains(small)

    def distance(self, a: vg.Subspace, b: vg.Subspace) -> int:
        return vg.q_distance(a, b)

    def pseudo_distance(self, a: vg.Subspace, b: vg.Subspace) -> int:
        return vg.q_pseudo_distance(a, b)

    def basepoint(self, s: int) -> vg.Subspace:
        return vg.basepoint(self.n, s, self.q)

    def dual_basepoint(self, s: int) -> vg.Subspace:
        """W_0' = <e_{s+1}, ..., e_n>."""
        return vg.complementary_basepoint(self.n, s, self.q)

    def radon_multiplicity(self, s: int) -> int:
        return q_int(self.n - s, self.q)

    def random_element(self, rng: random.Random) -> vg.InvertibleMatrix:
        return vg.InvertibleMatrix.random(self.n, self.q, rng)

    def permutation(self, g: vg.InvertibleMatrix, s: int) -> list[int]:
        return vg.permutation_of_level(g, self.level(s))

    def paired(self, w: vg.Subspace, w2: vg.Subspace) -> bool:
        return w.dim + w2.dim == self.n and (w.mask & w2.mask).bit_count() == 1


Geometry = SubsetGeometry | SubspaceGeometry


def make_geometry(family: str, n: int, q: Optional[int] = None) -> Geometry:
    if family == "subset":
        return SubsetGeometry(n)
    if family == "subspace":
        if q is None:
            raise ParameterError("the subspace family needs q")
        return SubspaceGeometry(n, int(q))
    raise ParameterError(f"unknown family {family!r}")


def _check_level(g: Geometry, s: int) -> None:
    if not 0 <= s <= g.n:
        raise ParameterError(f"level {s} outside 0..{g.n}")


def _distance_table(g: Geometry, s: int) -> np.ndarray:
    level = g.level(s)
    if g.family == "subset":
        masks = [x.mask for x in level]
        return np.array([[s - (a & b).bit_count() for b in masks] for a in masks], dtype=np.int64)
    logs = {g.q**i: i for i in range(s + 1)}
    masks = [w.mask for w in level]
    return np.array([[s - logs[(a & b).bit_count()] for b in masks] for a in masks], dtype=np.int64)


distance_table = lru_cache(maxsize=64)(_distance_table)


def radon_triplets(g: Geometry, s: int) -> Iterator[tuple[int, int, int]]:
    """Nonzero entries (row in level s+1, column in level s, 1) of R_s."""
    lower, upper = g.level(s), g.level(s + 1)
    if g.family == "subset":
        for i, x in enumerate(upper):
            for z in sg.subsets_of(x, s):
                yield i, lower.rank(z), 1
        return
    for i, x in enumerate(upper):
        for j, z in enumerate(lower):
            if z.mask & ~x.mask == 0:
                yield i, j, 1


@lru_cache(maxsize=128)
def build_radon(g: Geometry, s: int) -> ExactMatrix:
    """R_s : L^2(level s) -> L^2(level s+1), (R_s f)(X) = sum of f over Z inside X."""
    _check_level(g, s)
    _check_level(g, s + 1)
    lower, upper = g.level(s), g.level(s + 1)
    return matrix_from_triplets(
        radon_triplets(g, s), len(upper), len(lower), domain=lower, codomain=upper, name=f"R_{s}"
    )


def build_adjoint(r: ExactMatrix) -> ExactMatrix:
    """R_s^* : sum over super-objects; the transpose under the counting inner product."""
    name = r.name + "*" if not r.name.endswith("*") else r.name[:-1]
    return r.transpose(name)


@lru_cache(maxsize=128)
def build_averaging(g: Geometry, s: int, k: int) -> ExactMatrix:
    """M_k on level s: sums over the sphere of radius k (zero matrix when the sphere is empty)."""
    _check_level(g, s)
    if k < 0:
        raise ParameterError(f"radius must be nonnegative, got {k}")
    level = g.level(s)
    table = distance_table(g, s)
    arr = np.empty(table.shape, dtype=object)
    arr[...] = 0
    arr[table == k] = 1
    return ExactMatrix(arr, level, level, f"M_{k}")


@lru_cache(maxsize=128)
def build_subset_complement_operator(n: int, s: int) -> ExactMatrix:
    """C_s^* : L^2(P_{n-s}) -> L^2(P_s), f -> f o C_s (a permutation matrix)."""
    g = SubsetGeometry(n)
    _check_level(g, s)
    target, source = g.level(s), g.level(n - s)
    trip = ((i, source.rank(sg.complement(x)), 1) for i, x in enumerate(target))
    return matrix_from_triplets(trip, len(target), len(source), domain=source, codomain=target, name=f"C_{s}*")


@lru_cache(maxsize=128)
def build_q_complement_operator(n: int, s: int, q: int, direction: str = "to_s") -> ExactMatrix:
    """Summation over direct-sum complements.

    ``direction="to_s"`` gives C(q)_s^* : L^2(V_{n-s}) -> L^2(V_s);
    ``direction="to_complement"`` gives C(q)_{n-s}^* : L^2(V_s) -> L^2(V_{n-s}).
    """
    g = SubspaceGeometry(n, int(q))
    if not 0 <= 2 * s <= n:
        raise ParameterError(f"complement operators are indexed by s <= n/2, got s={s}, n={n}")
    small, large = g.level(s), g.level(n - s)
    trip = (
        (i, j, 1)
        for i, w in enumerate(small)
        for j, wp in enumerate(large)
        if (w.mask & wp.mask).bit_count() == 1
    )
    c = matrix_from_triplets(trip, len(small), len(large), domain=large, codomain=small, name=f"Cq_{s}*")
    if direction == "to_s":
        return c
    if direction == "to_complement":
        return c.transpose(f"Cq_{n - s}*")
    raise ParameterError(f"unknown direction {direction!r}")


def complement_operator(g: Geometry, s: int) -> ExactMatrix:
    """The complement operator L^2(level n-s) -> L^2(level s) of either family."""
    if g.family == "subset":
        return build_subset_complement_operator(g.n, s)
    if 2 * s <= g.n:
        return build_q_complement_operator(g.n, s, g.q, "to_s")
    return build_q_complement_operator(g.n, g.n - s, g.q, "to_complement")


@dataclass
class IdentityCheck:
    """Outcome of one exact operator identity."""

    name: str
    params: dict
    holds: bool
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "params": self.params, "holds": self.holds, "witness": self.witness}


def _compare(name: str, params: dict, lhs: ExactMatrix, rhs: ExactMatrix) -> IdentityCheck:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return IdentityCheck(name, params, True, {"shape": list(lhs.shape)})
    witness: dict[str, Any] = {"row": diff[0], "col": diff[1], "lhs": str(diff[2]), "rhs": str(diff[3])}
    ratio = lhs.proportionality(rhs)
    if ratio is not None:
        witness["lhs_over_rhs"] = f"{ratio.numerator}/{ratio.denominator}"
    return IdentityCheck(name, params, False, witness)


def verify_composition_identity(g: Geometry, s: int) -> IdentityCheck:
    """R_s^* R_s = m Id + M_1 on level s, with m = n-s (subsets) or (n-s)_q (subspaces)."""
    r = build_radon(g, s)
    lhs = build_adjoint(r) @ r
    m = g.radon_multiplicity(s)
    rhs = ExactMatrix.identity(len(g.level(s)), g.level(s)).scaled(m) + build_averaging(g, s, 1)
    return _compare("composition_identity", {**g.params(), "s": s, "multiplicity": m}, lhs, rhs)


def verify_commutation(n: int, s: int, q: int) -> list[IdentityCheck]:
    """Complement/Radon commutation rules for 1 <= s <= n/2.

    Checks C_s^* R_{n-s}^* = q^a R_{s-1} C_{s-1}^* and
    C_{n-s}^* R_{s-1} = q^a R_{n-s}^* C_{n-s+1}^* with a = (n-s)-(s-1),
    the transposed orientation of the second rule, and the two commuting
    squares for C_{n-s}^* C_s^* and C_s^* C_{n-s}^*, both without a scalar
    and with the scalar q^{2a} that the first two rules force.
    """
    if not 1 <= 2 * s <= n or s < 1:
        raise ParameterError(f"need 1 <= s <= n/2, got n={n}, s={s}")
    g = SubspaceGeometry(n, int(q))
    a = (n - s) - (s - 1)
    factor = g.q**a
    params = {"family": "subspace", "n": n, "s": s, "q": g.q, "factor": factor}
    c_s = build_q_complement_operator(n, s, g.q, "to_s")
    c_ns = build_q_complement_operator(n, s, g.q, "to_complement")
    c_s1 = build_q_complement_operator(n, s - 1, g.q, "to_s")
    c_ns1 = build_q_complement_operator(n, s - 1, g.q, "to_complement")
    r_s1 = build_radon(g, s - 1)
    r_ns_adj = build_adjoint(build_radon(g, n - s))

    checks = [
        _compare("commutation_complement_down", params, c_s @ r_ns_adj, (r_s1 @ c_s1).scaled(factor)),
        _compare("commutation_complement_up", params, c_ns @ r_s1, (r_ns_adj @ c_ns1).scaled(factor)),
        # Same rule with every operator replaced by its transpose.
        _compare(
            "commutation_complement_up_transposed",
            params,
            build_adjoint(r_s1) @ c_s,
            (c_s1 @ build_radon(g, n - s)).scaled(factor),
        ),
        _compare("commuting_square_unscaled_i", params, (c_ns @ c_s) @ r_ns_adj, r_ns_adj @ (c_ns1 @ c_s1)),
        _compare("commuting_square_unscaled_ii", params, r_s1 @ (c_s1 @ c_ns1), (c_s @ c_ns) @ r_s1),
        # Chaining the two rules above puts factor**2 into each square.
        _compare(
            "commuting_square_scaled_i",
            {**params, "factor": factor**2},
            (c_ns @ c_s) @ r_ns_adj,
            (r_ns_adj @ (c_ns1 @ c_s1)).scaled(factor**2),
        ),
        _compare(
            "commuting_square_scaled_ii",
            {**params, "factor": factor**2},
            (r_s1 @ (c_s1 @ c_ns1)).scaled(factor**2),
            (c_s @ c_ns) @ r_s1,
        ),
    ]
    return checks


def permutation_matrix(perm: Sequence[int], level=None) -> ExactMatrix:
    """Matrix of f -> f o g^{-1} when ``perm[i]`` is the rank of g.(point i)."""
    m = ExactMatrix.zeros(len(perm), len(perm), domain=level, codomain=level, name="tau")
    for i, j in enumerate(perm):
        m.entries[j, i] = 1
    return m


def intertwines(t: ExactMatrix, perm_domain: Sequence[int], perm_codomain: Sequence[int]) -> bool:
    """T o tau_g == tau_g o T, i.e. T[g x, g y] == T[x, y] for all x, y."""
    moved = t.entries[np.ix_(list(perm_codomain), list(perm_domain))]
    return bool(np.all(moved == t.entries))


def sample_group_elements(g: Geometry, count: int, seed: str) -> list:
    rng = random.Random(seed)
    return [g.random_element(rng) for _ in range(count)]

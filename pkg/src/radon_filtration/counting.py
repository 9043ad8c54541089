"""Configuration counts: closed forms next to exhaustive-enumeration oracles.

Every count below is the size of a set of lattice points cut out by
containment and distance conditions relative to a basepoint.  The closed
forms are products of (Gaussian) binomials; the oracles walk the levels and
also check that the count does not depend on which representative of the
relevant orbit was used, raising :class:`InconsistencyError` if it does.

Kinds and their parameters:

=========== ================== ===============================================================
kind        parameters         set counted
=========== ================== ===============================================================
Omega       n, s, i            level-s points at distance i from X_0
A           n, s, t, k, j      Y in level t, Y in X, l(Y, X_0) = k, d(X, X_0) = j
C_eq/C_up   n, s, t, k         Y in level t over Z, l(Y, X_0) = k or k+1, l(Z, X_0) = k
B           n, s, t, k, j      Y' in level n-t over X', d(X', X_0') = j, l(X_0', Y') = k
D           n, s, t, k, kprime Y' in level n-t under Z', l(X_0', Z') = k, l(X_0', Y') = kprime
N_j         n, s, j, q         complements of W_0 at distance j from W_0'
S_j         n, s, j, q         complements of W_0' at distance j from W_0
meet_dim    n, s, l, t, q      l-dim Z with dim(Z & W) = t, W of dim s
transversal a, b, k, q         k-dim Z in W_1 + W_2 with Z & W_1 = 0
=========== ================== ===============================================================

The ``_q`` variants of Omega, A, C_eq, C_up, B and D take ``q`` and count
subspaces; ``l`` is ``dim U - dim(U & W)`` there and ``|Y - X|`` for sets.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import InconsistencyError, ParameterError
from .matrix import format_rational
from .operators import Geometry, SubsetGeometry, SubspaceGeometry
from .qcombinatorics import binomial, gaussian_binomial, q_int
from . import subspace_geometry as vg

LADDER_KINDS = ("Omega", "A", "C_eq", "C_up", "B", "D")
KINDS = LADDER_KINDS + tuple(k + "_q" for k in LADDER_KINDS) + ("N_j", "S_j", "meet_dim", "transversal")


def _need(params: dict, *names: str) -> list[int]:
    missing = [x for x in names if params.get(x) is None]
    if missing:
        raise ParameterError(f"missing parameters: {', '.join(missing)}")
    return [int(params[x]) for x in names]


def _geometry(n: int, q: Optional[int]) -> Geometry:
    return SubsetGeometry(n) if q is None else SubspaceGeometry(n, q)


def _check_ladder(n: int, s: int, t: int, k: int, *, kmax: int, half: bool = True) -> None:
    if not (0 <= t <= s <= n and (2 * s <= n or not half)):
        bound = "n/2" if half else "n"
        raise ParameterError(f"need 0 <= t <= s <= {bound}, got n={n}, s={s}, t={t}")
    if not 0 <= k <= kmax:
        raise ParameterError(f"k={k} outside 0..{kmax}")


# closed forms


def _omega(n: int, s: int, i: int, q: Optional[int]) -> int:
    if not (0 <= s <= n and 0 <= i <= s):
        raise ParameterError(f"need 0 <= i <= s <= n, got n={n}, s={s}, i={i}")
    if q is None:
        return binomial(s, i) * binomial(n - s, i)
    return gaussian_binomial(s, s - i, q) * gaussian_binomial(n - s, i, q) * q ** (i * i)


def _a(n: int, s: int, t: int, k: int, j: int, q: Optional[int]) -> int:
    _check_ladder(n, s, t, k, kmax=t, half=False)
    if not 0 <= j <= min(s, n - s):
        raise ParameterError(f"j={j} outside 0..{min(s, n - s)}")
    if q is None:
        return binomial(s - j, t - k) * binomial(j, k)
    e = ((s - j) - (t - k)) * k
    if binomial(s - j, t - k) == 0 or binomial(j, k) == 0:
        return 0
    return gaussian_binomial(s - j, t - k, q) * gaussian_binomial(j, k, q) * q**e


def _b(n: int, s: int, t: int, k: int, j: int, q: Optional[int]) -> int:
    _check_ladder(n, s, t, k, kmax=t)
    if not 0 <= j <= s:
        raise ParameterError(f"j={j} outside 0..{s}")
    if q is None:
        return binomial(s - j, s - j - (t - k)) * binomial(j, j - k)
    if binomial(s - j, s - j - (t - k)) == 0 or binomial(j, j - k) == 0:
        return 0
    e = ((s - j) - (t - k)) * k
    return gaussian_binomial(s - j, s - j - (t - k), q) * gaussian_binomial(j, j - k, q) * q**e


def _c(n: int, s: int, t: int, k: int, up: bool, q: Optional[int]) -> int:
    if t < 1:
        raise ParameterError("the C and D counts need t >= 1")
    _check_ladder(n, s, t, k, kmax=t - 1)
    if q is None:
        return n - (s + k) if up else s - (t - 1 - k)
    if up:
        return q_int(n - (s + k), q) * q ** (s - (t - (k + 1)))
    return q_int(s - (t - 1 - k), q)


def _d(n: int, s: int, t: int, k: int, kprime: int, q: Optional[int]) -> int:
    if kprime not in (k, k + 1):
        raise ParameterError(f"kprime must be k or k+1, got k={k}, kprime={kprime}")
    # same closed form as C; the oracle counts the dual configuration
    return _c(n, s, t, k, kprime == k + 1, q)


def _check_complement_args(n: int, s: int, j: int) -> None:
    if not (0 <= s <= n and 0 <= j <= min(s, n - s)):
        raise ParameterError(f"need 0 <= j <= min(s, n-s), got n={n}, s={s}, j={j}")


def complements_closed_form(n: int, s: int, j: int, q: int) -> int:
    """(n-s choose j)_q prod_{i<j} (q^s - q^i): complements of W_0 at distance j from W_0'.

    A complement is the graph of a linear map W_0' -> W_0, and its distance
    from W_0' is the rank of that map.
    """
    _check_complement_args(n, s, j)
    prod = 1
    for i in range(j):
        prod *= q**s - q**i
    return gaussian_binomial(n - s, j, q) * prod


def nj_printed(n: int, s: int, j: int, q: int) -> Fraction:
    """The printed expression (n-s choose n-s-j)_q prod(q^s - q^i) prod(q^j - q^i) / (q^j - 1).

    At j = 0 the denominator vanishes; the j = 0 class is the single point
    W_0' and the value 1 is returned for it.
    """
    _check_complement_args(n, s, j)
    if j == 0:
        return Fraction(1)
    num = gaussian_binomial(n - s, n - s - j, q)
    for i in range(j):
        num *= (q**s - q**i) * (q**j - q**i)
    return Fraction(num, q**j - 1)


def _meet_dim(n: int, s: int, l: int, t: int, q: int) -> int:
    if not (0 <= s <= n and 0 <= l <= n and 0 <= t <= min(s, l)):
        raise ParameterError(f"invalid meet_dim parameters n={n}, s={s}, l={l}, t={t}")
    return q ** ((s - t) * (l - t)) * gaussian_binomial(n - s, l - t, q) * gaussian_binomial(s, t, q)


def _transversal(a: int, b: int, k: int, q: int) -> int:
    if not (a >= 0 and b >= 0 and 0 <= k <= a + b):
        raise ParameterError(f"invalid transversal parameters a={a}, b={b}, k={k}")
    return q ** (a * k) * gaussian_binomial(b, k, q)


def count_configurations(kind: str, **params) -> int:
    """Closed-form size of the configuration set ``kind``; see the module table."""
    base, is_q = (kind[:-2], True) if kind.endswith("_q") else (kind, False)
    if kind in ("N_j", "S_j", "meet_dim", "transversal"):
        is_q = True
    if kind not in KINDS:
        raise ParameterError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    q = _need(params, "q")[0] if is_q else None
    if base == "Omega":
        return _omega(*_need(params, "n", "s", "i"), q)
    if base == "A":
        return _a(*_need(params, "n", "s", "t", "k", "j"), q)
    if base == "B":
        return _b(*_need(params, "n", "s", "t", "k", "j"), q)
    if base in ("C_eq", "C_up"):
        return _c(*_need(params, "n", "s", "t", "k"), base == "C_up", q)
    if base == "D":
        return _d(*_need(params, "n", "s", "t", "k", "kprime"), q)
    if base in ("N_j", "S_j"):
        return complements_closed_form(*_need(params, "n", "s", "j"), q)
    if base == "meet_dim":
        return _meet_dim(*_need(params, "n", "s", "l", "t"), q)
    return _transversal(*_need(params, "a", "b", "k"), q)


# enumeration oracles


def _below(a, b) -> bool:
    """a is contained in b (both families store a span or element bitmask)."""
    return a.mask & ~b.mask == 0


def _constant(hists: dict, key, what: str) -> Counter:
    found = hists.get(key)
    if not found:
        return Counter()
    if len(found) != 1:
        raise InconsistencyError(f"{what} count depends on the representative at {key}")
    return Counter(dict(next(iter(found))))


def _collect(items) -> dict:
    out: dict = {}
    for key, hist in items:
        out.setdefault(key, set()).add(tuple(sorted(hist.items())))
    return out


@lru_cache(maxsize=256)
def _omega_table(g: Geometry, s: int) -> dict:
    level = g.level(s)
    return _collect((None, Counter(g.distance(x, y) for y in level)) for x in level)


@lru_cache(maxsize=256)
def _a_table(g: Geometry, s: int, t: int) -> dict:
    x0 = g.basepoint(s)
    lower = g.level(t)

    def rows():
        for w in g.level(s):
            yield g.distance(w, x0), Counter(g.pseudo_distance(u, x0) for u in lower if _below(u, w))

    return _collect(rows())


@lru_cache(maxsize=256)
def _c_table(g: Geometry, s: int, t: int) -> dict:
    x0 = g.basepoint(s)
    upper = g.level(t)

    def rows():
        for z in g.level(t - 1):
            yield g.pseudo_distance(z, x0), Counter(g.pseudo_distance(u, x0) for u in upper if _below(z, u))

    return _collect(rows())


@lru_cache(maxsize=256)
def _b_table(g: Geometry, s: int, t: int) -> dict:
    x0p = g.dual_basepoint(s)
    upper = g.level(g.n - t)

    def rows():
        for w in g.level(g.n - s):
            yield g.distance(w, x0p), Counter(g.pseudo_distance(x0p, u) for u in upper if _below(w, u))

    return _collect(rows())


@lru_cache(maxsize=256)
def _d_table(g: Geometry, s: int, t: int) -> dict:
    x0p = g.dual_basepoint(s)
    lower = g.level(g.n - t)

    def rows():
        for z in g.level(g.n - t + 1):
            yield g.pseudo_distance(x0p, z), Counter(g.pseudo_distance(x0p, u) for u in lower if _below(u, z))

    return _collect(rows())


@lru_cache(maxsize=256)
def _meet_dim_table(n: int, s: int, l: int, q: int) -> dict:
    g = SubspaceGeometry(n, q)
    targets = g.level(l)
    return _collect((None, Counter(vg.intersection_dim(z, w) for z in targets)) for w in g.level(s))


@lru_cache(maxsize=256)
def _transversal_table(a: int, b: int, k: int, q: int) -> dict:
    g = SubspaceGeometry(a + b, q)
    targets = g.level(k)
    return _collect(
        (None, Counter(vg.intersection_dim(z, w1) == 0 for z in targets)) for w1 in g.level(a)
    )


def oracle_complement_histogram(n: int, s: int, q: int, swap: bool = False) -> list[tuple[int, int]]:
    """|N_j| (or |S_j| with ``swap``) by testing every point of the opposite level."""
    g = SubspaceGeometry(n, q)
    w0, w0p = g.basepoint(s), g.dual_basepoint(s)
    fixed, reference, level = (w0p, w0, g.level(s)) if swap else (w0, w0p, g.level(n - s))
    counts = Counter(
        vg.q_distance(w, reference) for w in level if (w.mask & fixed.mask).bit_count() == 1
    )
    return sorted(counts.items())


def oracle_count(kind: str, **params) -> int:
    """Exhaustive count of the configuration set ``kind``."""
    count_configurations(kind, **params)  # validates the parameters
    base, is_q = (kind[:-2], True) if kind.endswith("_q") else (kind, False)
    q = int(params["q"]) if is_q or kind in ("N_j", "S_j", "meet_dim", "transversal") else None
    if base == "Omega":
        n, s, i = _need(params, "n", "s", "i")
        return _constant(_omega_table(_geometry(n, q), s), None, kind)[i]
    if base == "A":
        n, s, t, k, j = _need(params, "n", "s", "t", "k", "j")
        return _constant(_a_table(_geometry(n, q), s, t), j, kind)[k]
    if base == "B":
        n, s, t, k, j = _need(params, "n", "s", "t", "k", "j")
        return _constant(_b_table(_geometry(n, q), s, t), j, kind)[k]
    if base in ("C_eq", "C_up"):
        n, s, t, k = _need(params, "n", "s", "t", "k")
        return _constant(_c_table(_geometry(n, q), s, t), k, kind)[k + (base == "C_up")]
    if base == "D":
        n, s, t, k, kprime = _need(params, "n", "s", "t", "k", "kprime")
        return _constant(_d_table(_geometry(n, q), s, t), k, kind)[kprime]
    if base in ("N_j", "S_j"):
        n, s, j = _need(params, "n", "s", "j")
        return dict(oracle_complement_histogram(n, s, q, swap=base == "S_j")).get(j, 0)
    if base == "meet_dim":
        n, s, l, t = _need(params, "n", "s", "l", "t")
        return _constant(_meet_dim_table(n, s, l, q), None, kind)[t]
    a, b, k = _need(params, "a", "b", "k")
    return _constant(_transversal_table(a, b, k, q), None, kind)[True]


# tables


@dataclass(frozen=True)
class CountRow:
    params: dict
    closed: int
    oracle: int
    extra: dict = field(default_factory=dict)

    @property
    def agrees(self) -> bool:
        return self.closed == self.oracle

    def to_json(self) -> dict:
        out = {**self.params, "closed_form": self.closed, "oracle": self.oracle, "agrees": self.agrees}
        for key, value in self.extra.items():
            out[key] = format_rational(value) if isinstance(value, Fraction) else value
        return out


def parameter_grid(kind: str, n: int, s: Optional[int] = None) -> list[dict]:
    """Every valid parameter tuple of ``kind`` at ambient dimension ``n`` (optionally one level)."""
    base = kind[:-2] if kind.endswith("_q") else kind
    if s is not None and not 0 <= s <= n:
        raise ParameterError(f"s must lie in 0..{n}, got {s}")
    half = [s] if s is not None else list(range(n // 2 + 1))
    out: list[dict] = []
    if base == "Omega":
        for s_ in [s] if s is not None else range(n + 1):
            out += [{"n": n, "s": s_, "i": i} for i in range(min(s_, n - s_) + 1)]
    elif base in ("A", "B"):
        for s_ in half:
            out += [
                {"n": n, "s": s_, "t": t, "k": k, "j": j}
                for t in range(s_ + 1)
                for k in range(t + 1)
                for j in range(min(s_, n - s_) + 1)
            ]
    elif base in ("C_eq", "C_up"):
        for s_ in half:
            out += [{"n": n, "s": s_, "t": t, "k": k} for t in range(1, s_ + 1) for k in range(t)]
    elif base == "D":
        for s_ in half:
            out += [
                {"n": n, "s": s_, "t": t, "k": k, "kprime": kp}
                for t in range(1, s_ + 1)
                for k in range(t)
                for kp in (k, k + 1)
            ]
    elif base in ("N_j", "S_j"):
        for s_ in half:
            out += [{"n": n, "s": s_, "j": j} for j in range(s_ + 1)]
    elif base == "meet_dim":
        for s_ in [s] if s is not None else range(n + 1):
            out += [
                {"n": n, "s": s_, "l": l, "t": t}
                for l in range(n + 1)
                for t in range(max(0, s_ + l - n), min(s_, l) + 1)
            ]
    elif base == "transversal":
        out = [{"a": a, "b": n - a, "k": k} for a in range(n + 1) for k in range(n - a + 1)]
    else:
        raise ParameterError(f"unknown kind {kind!r}")
    return out


def count_table(kind: str, n: int, s: Optional[int] = None, q: Optional[int] = None) -> list[CountRow]:
    """Closed form against oracle for every parameter tuple of ``kind``."""
    needs_q = kind.endswith("_q") or kind in ("N_j", "S_j", "meet_dim", "transversal")
    if needs_q and q is None:
        raise ParameterError(f"kind {kind} needs q")
    rows = []
    for p in parameter_grid(kind, n, s):
        full = {**p, "q": q} if needs_q else p
        extra = {}
        if kind == "N_j":
            extra["printed"] = nj_printed(p["n"], p["s"], p["j"], q)
        rows.append(CountRow(full, count_configurations(kind, **full), oracle_count(kind, **full), extra))
    return rows

"""Closed-form spherical functions, coefficient ladders and eigenvalues.

Each evaluator takes ``q=None`` for the subset family and an integer ``q``
for the subspace family.  The q-evaluators also accept ``q=1``, where every
q-integer collapses to an ordinary integer; the classical limit is tested
that way rather than through symbolic algebra.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .counting import count_configurations, nj_printed, oracle_complement_histogram
from .errors import InconsistencyError, ParameterError
from .matrix import format_rational
from .qcombinatorics import binomial, gaussian_binomial, q_factorial, q_int, q_power


def _family_q(family: str, q: Optional[int]) -> Optional[int]:
    if family == "subset":
        return None
    if family == "subspace":
        if q is None:
            raise ParameterError("the subspace family needs q")
        return int(q)
    raise ParameterError(f"unknown family {family!r}")


def _check_range(n: int, s: int, t: int) -> None:
    if not (0 <= t <= s and 2 * s <= n):
        raise ParameterError(f"need 0 <= t <= s <= n/2, got n={n}, s={s}, t={t}")


def _binom(q: Optional[int]):
    return binomial if q is None else (lambda a, b: gaussian_binomial(a, b, q))


def _fact(q: Optional[int]):
    if q is None:
        from math import factorial

        return factorial
    return lambda a: q_factorial(a, q)


def _qi(a: int, q: Optional[int]) -> int:
    return a if q is None else q_int(a, q)


def gamma(n: int, s: int, t: int, k: int, q: Optional[int] = None) -> Fraction:
    """(s choose t)^{-1} (s-t+k)! (n-s-k)! / ((s-t)! (n-s)!), q-deformed when q is given."""
    b, f = _binom(q), _fact(q)
    return Fraction(f(s - t + k) * f(n - s - k), b(s, t) * f(s - t) * f(n - s))


@dataclass(frozen=True)
class CoefficientLadder:
    """Values h_t(Y) = alpha^k on the shells l(Y, basepoint) = k, k = 0..t."""

    n: int
    s: int
    t: int
    q: Optional[int]
    values: tuple[Fraction, ...]

    def recurrence_residuals(self) -> list[Fraction]:
        """|C^{k,k}| a^k + |C^{k+1,k}| a^{k+1} for k < t; all zero for a valid ladder."""
        out = []
        for k in range(self.t):
            same, up = _c_counts(self.n, self.s, self.t, k, self.q)
            out.append(same * self.values[k] + up * self.values[k + 1])
        return out


def _c_counts(n: int, s: int, t: int, k: int, q: Optional[int]) -> tuple[int, int]:
    if q is None:
        return (
            count_configurations("C_eq", n=n, s=s, t=t, k=k),
            count_configurations("C_up", n=n, s=s, t=t, k=k),
        )
    return (
        count_configurations("C_eq_q", n=n, s=s, t=t, k=k, q=q),
        count_configurations("C_up_q", n=n, s=s, t=t, k=k, q=q),
    )


def alpha_ladder(n: int, s: int, t: int, q: Optional[int] = None) -> CoefficientLadder:
    """Kernel-condition ladder: alpha^0 = (s choose t)^{-1}, alpha^{k+1} = -|C^{k,k}|/|C^{k+1,k}| alpha^k."""
    _check_range(n, s, t)
    values = [Fraction(1, _binom(q)(s, t))]
    for k in range(t):
        same, up = _c_counts(n, s, t, k, q)
        values.append(-Fraction(same, up) * values[-1])
    ladder = CoefficientLadder(n, s, t, q, tuple(values))
    if q is None:
        # classical closed form of the same ladder
        for k, a in enumerate(values):
            if a != (-1) ** k * gamma(n, s, t, k):
                raise InconsistencyError(f"alpha ladder disagrees with its closed form at k={k}")
    return ladder


def beta_ladder(n: int, s: int, t: int, q: Optional[int] = None) -> CoefficientLadder:
    """Dual ladder: beta^0 = (s choose s-t)^{-1}, ratios from the D counts."""
    _check_range(n, s, t)
    values = [Fraction(1, _binom(q)(s, s - t))]
    for k in range(t):
        if q is None:
            same = count_configurations("D", n=n, s=s, t=t, k=k, kprime=k)
            up = count_configurations("D", n=n, s=s, t=t, k=k, kprime=k + 1)
        else:
            same = count_configurations("D_q", n=n, s=s, t=t, k=k, kprime=k, q=q)
            up = count_configurations("D_q", n=n, s=s, t=t, k=k, kprime=k + 1, q=q)
        values.append(-Fraction(same, up) * values[-1])
    return CoefficientLadder(n, s, t, q, tuple(values))


def _k0(s: int, t: int, j: int) -> int:
    return 0 if j <= s - t else t + j - s


def _spherical(n: int, s: int, t: int, j: int, q: Optional[int]) -> Fraction:
    if not 0 <= j <= min(s, n - s):
        raise ParameterError(f"distance j={j} outside 0..{min(s, n - s)}")
    b = _binom(q)
    lo, hi = _k0(s, t, j), min(j, t)
    total = Fraction(0)
    for k in range(t + 1):
        term = (-1) ** k * b(s - j, t - k) * b(j, k) * gamma(n, s, t, k, q)
        if q is not None:
            # k(k-1) is even, so the exponent is an integer
            term *= q_power(q, (k * (k - 1)) // 2 - k * j)
        if not lo <= k <= hi:
            if term:
                raise InconsistencyError(f"term k={k} outside [{lo}, {hi}] does not vanish")
            continue
        total += term
    return total


def spherical_closed_form(family: str, n: int, s: int, t: int, j: int, q: Optional[int] = None) -> Fraction:
    """Value of the t-th spherical function of level s at distance j from the basepoint."""
    _check_range(n, s, t)
    return _spherical(n, s, t, j, _family_q(family, q))


def spherical_q_specialized(n: int, s: int, t: int, j: int, q: int) -> Fraction:
    """The q-formula at any positive integer q, including the classical point q = 1."""
    _check_range(n, s, t)
    return _spherical(n, s, t, j, int(q))


def spherical_from_ladder(n: int, s: int, t: int, j: int, q: Optional[int] = None) -> Fraction:
    """sum_k |A^{k,j}| alpha^k, built from the counts and the alpha ladder."""
    ladder = alpha_ladder(n, s, t, q)
    total = Fraction(0)
    for k in range(t + 1):
        if q is None:
            a = count_configurations("A", n=n, s=s, t=t, k=k, j=j)
        else:
            a = count_configurations("A_q", n=n, s=s, t=t, k=k, j=j, q=q)
        total += a * ladder.values[k]
    return total


def dual_spherical(family: str, n: int, s: int, t: int, j: int, q: Optional[int] = None) -> Fraction:
    """Spherical function of level n-s: same value as at level s for the same distance."""
    return spherical_closed_form(family, n, s, t, j, q)


def dual_spherical_from_beta(n: int, s: int, t: int, j: int, q: Optional[int] = None) -> Fraction:
    """sum_k |B^{k,j}| beta^k, the independent dual evaluation."""
    ladder = beta_ladder(n, s, t, q)
    total = Fraction(0)
    for k in range(t + 1):
        if q is None:
            bcount = count_configurations("B", n=n, s=s, t=t, k=k, j=j)
        else:
            bcount = count_configurations("B_q", n=n, s=s, t=t, k=k, j=j, q=q)
        total += bcount * ladder.values[k]
    return total


def dual_spherical_single_term(n: int, s: int, t: int, j: int, q: int) -> Fraction:
    """The k = j term alone (the collapsed form used for the top component)."""
    _check_range(n, s, t)
    k = j
    return (
        (-1) ** k
        * q_power(q, (k * (k - 1)) // 2 - k * j)
        * gaussian_binomial(j, k, q)
        * gaussian_binomial(s - j, t - k, q)
        * gamma(n, s, t, k, q)
    )


def eigenvalue_closed_form(family: str, n: int, s: int, t: int, q: Optional[int] = None) -> int:
    """Eigenvalue of M_1 on component t: (n-s)(s-t) - (s-t+1)t, or its q-analogue."""
    _check_range(n, s, t)
    q = _family_q(family, q)
    if q is None:
        return (n - s) * (s - t) - (s - t + 1) * t
    return q * q_int(n - s, q) * q_int(s - t, q) - q_int(s - t + 1, q) * q_int(t, q)


def eigenvalue_printed_q(n: int, s: int, t: int, q: int) -> Fraction:
    """q(n-s)_q ((s-t)_q - (s-t+1)_q t_q / (q (n-s)_q)), unsimplified."""
    _check_range(n, s, t)
    outer = q * q_int(n - s, q)
    return outer * (q_int(s - t, q) - Fraction(q_int(s - t + 1, q) * q_int(t, q), outer))


@dataclass(frozen=True)
class SphericalTable:
    family: str
    n: int
    s: int
    q: Optional[int]
    rows: tuple[tuple[int, tuple[Fraction, ...]], ...]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "s": self.s,
            "q": self.q,
            "rows": [{"t": t, "values": [format_rational(x) for x in vals]} for t, vals in self.rows],
        }

    def to_csv(self) -> str:
        width = max(len(vals) for _, vals in self.rows)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t"] + [f"j={j}" for j in range(width)])
        for t, vals in self.rows:
            w.writerow([t] + [format_rational(x) for x in vals])
        return buf.getvalue()

    def values(self) -> list[list[Fraction]]:
        return [list(v) for _, v in self.rows]


def spherical_table(family: str, n: int, s: int, q: Optional[int] = None) -> SphericalTable:
    q = _family_q(family, q)
    if not 0 <= 2 * s <= n:
        raise ParameterError(f"need 0 <= s <= n/2, got n={n}, s={s}")
    jmax = min(s, n - s)
    rows = tuple(
        (t, tuple(_spherical(n, s, t, j, q) for j in range(jmax + 1))) for t in range(s + 1)
    )
    return SphericalTable(family, n, s, q, rows)


@dataclass(frozen=True)
class PairingReport:
    n: int
    s: int
    q: int
    value: Fraction
    oracle_counts: tuple[tuple[int, int], ...]
    printed_counts: tuple[tuple[int, Fraction], ...]
    printed_sum: Fraction
    value_with_printed_counts: Fraction

    @property
    def nonzero(self) -> bool:
        return self.value != 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "q": self.q,
            "value": format_rational(self.value),
            "nonzero": self.nonzero,
            "oracle_counts": [[j, c] for j, c in self.oracle_counts],
            "printed_counts": [[j, format_rational(c)] for j, c in self.printed_counts],
            "printed_closed_sum": format_rational(self.printed_sum),
            "value_with_printed_counts": format_rational(self.value_with_printed_counts),
        }


def printed_pairing_sum(n: int, s: int, q: int) -> Fraction:
    """1 + sum_{j=1}^{s} (-1)^j q^{j(j-3)/2} prod_{i<j}(q^s - q^i) prod_{1<=i<j}(q^i - 1)."""
    total = Fraction(1)
    for j in range(1, s + 1):
        term = Fraction((-1) ** j)
        # j(j-3) is always even
        term *= q_power(q, j * (j - 3) // 2)
        for i in range(j):
            term *= q**s - q**i
        for i in range(1, j):
            term *= q**i - 1
        total += term
    return total


def theorem5_pairing(n: int, s: int, q: int) -> PairingReport:
    """sum_j |N_j| phi_s(j): the value at W_0 of the complement operator on the top dual spherical function.

    Uses exhaustively counted |N_j|; the printed count formula and the
    printed closed sum are carried alongside for comparison.
    """
    if not 1 <= 2 * s <= n or s < 1:
        raise ParameterError(f"need 1 <= s <= n/2, got n={n}, s={s}")
    q = int(q)
    counts = oracle_complement_histogram(n, s, q)
    value = sum((c * dual_spherical("subspace", n, s, s, j, q) for j, c in counts), Fraction(0))
    printed = tuple((j, nj_printed(n, s, j, q)) for j, _ in counts)
    with_printed = sum((c * dual_spherical("subspace", n, s, s, j, q) for j, c in printed), Fraction(0))
    return PairingReport(n, s, q, value, tuple(counts), printed, printed_pairing_sum(n, s, q), with_printed)


def ladder_function(n: int, s: int, t: int, q: Optional[int] = None) -> list[Fraction]:
    """h_t on level t: h_t(Y) = alpha^k with k = l(Y, basepoint of level s)."""
    from .operators import make_geometry

    g = make_geometry("subset" if q is None else "subspace", n, q)
    ladder = alpha_ladder(n, s, t, q)
    x0 = g.basepoint(s)
    return [ladder.values[g.pseudo_distance(y, x0)] for y in g.level(t)]


def ladder_kernel_residual(n: int, s: int, t: int, q: Optional[int] = None) -> list[Fraction]:
    """R_{t-1}^* h_t; the zero vector when h_t lies in the kernel (empty for t = 0)."""
    from .operators import build_adjoint, build_radon, make_geometry

    if t == 0:
        return []
    g = make_geometry("subset" if q is None else "subspace", n, q)
    return build_adjoint(build_radon(g, t - 1)) @ ladder_function(n, s, t, q)


def ladder_pushforward(n: int, s: int, t: int, q: Optional[int] = None) -> list[Fraction]:
    """X -> sum of h_t(Y) over level-t points Y inside X, as a function on level s."""
    from .operators import make_geometry

    g = make_geometry("subset" if q is None else "subspace", n, q)
    h = ladder_function(n, s, t, q)
    lower = g.level(t)
    return [
        sum((v for y, v in zip(lower, h) if y.mask & ~x.mask == 0), Fraction(0)) for x in g.level(s)
    ]


def weighted_orthogonality(family: str, n: int, s: int, q: Optional[int] = None) -> Optional[tuple[int, int]]:
    """First pair t < u with sum_j |Omega_j| Phi_t(j) Phi_u(j) != 0, or None."""
    q = _family_q(family, q)
    table = spherical_table(family, n, s, q).values()
    kind, extra = ("Omega", {}) if q is None else ("Omega_q", {"q": q})
    sizes = [count_configurations(kind, n=n, s=s, i=j, **extra) for j in range(len(table[0]))]
    for t in range(len(table)):
        for u in range(t + 1, len(table)):
            if sum(w * a * b for w, a, b in zip(sizes, table[t], table[u])) != 0:
                return (t, u)
    return None

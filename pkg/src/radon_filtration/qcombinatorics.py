"""Classical and q-deformed counting primitives.

Integers are Python ints and rationals are :class:`fractions.Fraction`;
both are arbitrary precision and ``Fraction`` is always kept in lowest
terms with a positive denominator.

Every function taking ``q`` accepts either a plain positive ``int`` or a
:class:`QParameter`.  Plain ints are allowed (including ``q = 1``) so that
the q-identities can be evaluated as polynomial identities, e.g. to check
the classical limit.  Geometric code (fields, subspaces) insists on a
validated :class:`QParameter`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Union

from .errors import ParameterError

__all__ = [
    "QParameter",
    "binomial",
    "q_int",
    "q_factorial",
    "gaussian_binomial",
    "q_power",
    "factor_prime_power",
]


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e`` and ``p`` prime, by trial division."""
    if q < 2:
        raise ParameterError(f"q={q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise ParameterError(f"q={q} is not a prime power")
    return p, e


@dataclass(frozen=True)
class QParameter:
    """Order of a finite field; validated eagerly as ``p**e``."""

    q: int
    p: int = field(init=False, compare=False)
    e: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if isinstance(self.q, bool) or not isinstance(self.q, int):
            raise ParameterError(f"q must be an integer, got {self.q!r}")
        p, e = factor_prime_power(self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "e", e)

    def __int__(self) -> int:
        return self.q

    def __index__(self) -> int:
        return self.q

    def __str__(self) -> str:
        return str(self.q)


QLike = Union[int, QParameter]


def _as_q(q: QLike) -> int:
    value = int(q)
    if value < 1:
        raise ParameterError(f"q must be positive, got {value}")
    return value


def binomial(n: int, m: int) -> int:
    """C(n, m), with the convention C(n, m) = 0 outside ``0 <= m <= n``."""
    if n < 0:
        raise ParameterError(f"binomial needs n >= 0, got {n}")
    if m < 0 or m > n:
        return 0
    return comb(n, m)


def q_int(n: int, q: QLike) -> int:
    """The q-integer ``1 + q + ... + q**(n-1)``; ``q_int(0, q) == 0``."""
    if n < 0:
        raise ParameterError(f"q_int needs n >= 0, got {n}")
    q = _as_q(q)
    return sum(q**i for i in range(n))


def q_factorial(n: int, q: QLike) -> int:
    if n < 0:
        raise ParameterError(f"q_factorial needs n >= 0, got {n}")
    q = _as_q(q)
    out = 1
    for k in range(1, n + 1):
        out *= q_int(k, q)
    return out


@lru_cache(maxsize=None)
def _gauss(n: int, m: int, q: int) -> int:
    # G(n, m) = G(n-1, m-1) + q^m G(n-1, m); every intermediate stays integral.
    if m < 0 or m > n:
        return 0
    if m == 0 or m == n:
        return 1
    return _gauss(n - 1, m - 1, q) + q**m * _gauss(n - 1, m, q)


def gaussian_binomial(n: int, m: int, q: QLike) -> int:
    """Number of m-dimensional subspaces of F_q^n (0 when m is out of range)."""
    if n < 0:
        raise ParameterError(f"gaussian_binomial needs n >= 0, got {n}")
    return _gauss(n, m, _as_q(q))


def q_power(q: QLike, exponent: int) -> Fraction:
    """``q**exponent`` as an exact rational; negative exponents allowed."""
    return Fraction(_as_q(q)) ** exponent

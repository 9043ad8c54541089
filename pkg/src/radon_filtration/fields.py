"""Table-driven arithmetic in F_q, q = p**e.

Elements are encoded as ints ``0 .. q-1``: the polynomial
``c_0 + c_1 x + ... + c_{e-1} x^{e-1}`` over F_p is the integer
``c_0 + c_1 p + ... + c_{e-1} p^{e-1}``.  For prime q this is plain residue
arithmetic.  Add/mul tables are built once per field.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .errors import ParameterError
from .qcombinatorics import QParameter

# Coefficients low degree first, monic.
DEFAULT_MODULI = {4: (1, 1, 1)}


def _poly_mulmod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> list[int]:
    e = len(modulus) - 1
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, e - 1, -1):
        c = prod[d]
        if c:
            for i in range(e + 1):
                prod[d - e + i] = (prod[d - e + i] - c * modulus[i]) % p
    return prod[:e]


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    # Degree <= 3 in practice; test for roots / low-degree factors by brute force.
    e = len(modulus) - 1
    for d in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            rem = list(modulus)
            for k in range(e - d, -1, -1):
                c = rem[k + d]
                if c:
                    for i in range(d + 1):
                        rem[k + i] = (rem[k + i] - c * divisor[i]) % p
            if not any(rem[:d]):
                return False
    return True


def _default_modulus(p: int, e: int) -> tuple[int, ...]:
    if p ** e in DEFAULT_MODULI:
        return DEFAULT_MODULI[p ** e]
    for tail in itertools.product(range(p), repeat=e):
        candidate = tuple(reversed(tail)) + (1,)
        if candidate[0] and _is_irreducible(candidate, p):
            return candidate
    raise AssertionError("an irreducible polynomial always exists")


def _decode(x: int, p: int, e: int) -> list[int]:
    return [(x // p**i) % p for i in range(e)]


def _encode(coeffs: Sequence[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(coeffs))


@dataclass(frozen=True)
class FiniteField:
    q: int
    p: int
    e: int
    modulus: tuple[int, ...]
    add: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)
    mul: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)
    neg: tuple[int, ...] = field(compare=False, repr=False)
    inv: tuple[int, ...] = field(compare=False, repr=False)

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    @property
    def elements(self) -> range:
        return range(self.q)

    def descriptor(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}


@lru_cache(maxsize=None)
def get_field(q: int, modulus: Optional[tuple[int, ...]] = None) -> FiniteField:
    """The field with ``q`` elements.

    ``modulus`` (monic, coefficients low degree first) is only used when q
    is not prime; it defaults to x^2+x+1 for F_4 and otherwise to the first
    irreducible polynomial found in lexicographic order.
    """
    qp = QParameter(int(q))
    p, e = qp.p, qp.e
    if e == 1:
        modulus = (0, 1)
    else:
        modulus = tuple(modulus) if modulus is not None else _default_modulus(p, e)
        if len(modulus) != e + 1 or modulus[-1] != 1 or not _is_irreducible(modulus, p):
            raise ParameterError(f"{modulus} is not a monic irreducible of degree {e} over F_{p}")
    elems = [_decode(x, p, e) for x in range(qp.q)]
    add = tuple(
        tuple(_encode([(a + b) % p for a, b in zip(x, y)], p) for y in elems) for x in elems
    )
    if e == 1:
        mul = tuple(tuple((x * y) % p for y in range(p)) for x in range(p))
    else:
        mul = tuple(tuple(_encode(_poly_mulmod(x, y, modulus, p), p) for y in elems) for x in elems)
    neg = tuple(row.index(0) for row in add)
    inv = tuple([0] + [mul[x].index(1) for x in range(1, qp.q)])
    return FiniteField(qp.q, p, e, modulus, add, mul, neg, inv)

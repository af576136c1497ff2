"""Irreducible character degrees of an enumerated group.

Uses the class-multiplication matrices: the central characters are the
common eigenvectors of all class matrices, which split into one-dimensional
eigenspaces over a prime field F_q with q = 1 mod exp(G) and q^2 > 4|G|.
Each common eigenvector, normalized at the identity class, gives chi(1)^2
through the orthogonality relation, read off modulo q.  Character values
themselves never leave this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator

import numpy as np

from . import modp
from ._nt import is_prime, require_prime
from .permcore import ElementTable, _compose, _inverse, _order
from .structure import ConjugacyClasses, conjugacy_classes


class CharacterDegreeError(ArithmeticError):
    pass


@dataclass(frozen=True)
class DegreeMultiset:
    degrees: tuple[int, ...]
    group_order: int

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees)))

    def __len__(self) -> int:
        return len(self.degrees)

    def __iter__(self) -> Iterator[int]:
        return iter(self.degrees)

    def square_sum(self) -> int:
        return sum(d * d for d in self.degrees)

    def is_consistent(self) -> bool:
        return self.square_sum() == self.group_order and all(self.group_order % d == 0 for d in self.degrees)


@dataclass(frozen=True)
class PPrimeDegrees:
    degrees: tuple[int, ...]
    prime: int

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees)))

    def __len__(self) -> int:
        return len(self.degrees)

    def __iter__(self) -> Iterator[int]:
        return iter(self.degrees)


def pprime_filter(d: DegreeMultiset | Iterable[int], p: int) -> PPrimeDegrees:
    require_prime(p)
    return PPrimeDegrees(tuple(x for x in d if x % p), p)


def admissible_primes(order: int, exponent: int, bound: int = modp.MAX_FIELD_PRIME) -> Iterator[int]:
    """Primes q = 1 (mod exponent) with q^2 > 4*order, increasing, below ``bound``."""
    q = exponent + 1
    while q * q <= 4 * order or q <= 2:
        q += exponent
    while q < bound:
        if is_prime(q):
            yield q
        q += exponent


def field_prime(order: int, exponent: int, bound: int = modp.MAX_FIELD_PRIME) -> int:
    for q in admissible_primes(order, exponent, bound):
        return q
    raise CharacterDegreeError(f"no admissible field prime below {bound}; raise the bound")


def class_matrix(table: ElementTable, cc: ConjugacyClasses, r: int) -> np.ndarray:
    """M[i, t] = #{x in C_r : x^-1 z_t in C_i} for class representatives z_t."""
    k = len(cc)
    perms, index, class_of = table.perms, table.index, cc.class_of
    M = np.zeros((k, k), dtype=np.int64)
    xinv = [_inverse(perms[x]) for x in cc.members[r]]
    for t, rep in enumerate(cc.reps):
        z = perms[rep]
        col = [0] * k
        for xi in xinv:
            col[class_of[index[_compose(xi, z)]]] += 1
        M[:, t] = col
    return M


def _split(basis: np.ndarray, M: np.ndarray, q: int) -> list[np.ndarray]:
    """Split an M-invariant subspace (rows of an RREF basis) into eigenspaces."""
    _, piv = modp.rref(basis, q)
    A = (M @ basis.T % q)[piv, :]
    m = A.shape[0]
    pieces = []
    for lam in modp.roots(modp.charpoly(A, q), q):
        Y = modp.nullspace((A - lam * np.eye(m, dtype=np.int64)) % q, q)
        sub, _ = modp.rref(Y @ basis % q, q)
        pieces.append(sub)
    if sum(p.shape[0] for p in pieces) != m:
        raise CharacterDegreeError(f"class matrix not diagonalizable over F_{q}")
    return pieces


def _degree_from_central_character(v: np.ndarray, cc: ConjugacyClasses, inv_class: list[int], order: int, q: int) -> int:
    v = v * modp.inv(v[0], q) % q
    s = 0
    for j, size in enumerate(cc.sizes):
        s = (s + int(v[j]) * int(v[inv_class[j]]) * modp.inv(size, q)) % q
    target = order * modp.inv(s, q) % q
    for d in range(1, math.isqrt(order) + 1):
        if order % d == 0 and d * d % q == target:
            return d
    raise CharacterDegreeError("no degree matches the central character")


def character_degrees(table: ElementTable, classes: ConjugacyClasses | None = None, q: int | None = None) -> DegreeMultiset:
    """The multiset of chi(1) over Irr(G), verified by the sum of squares.

    ``q`` overrides the field prime; it must be admissible for the group.
    """
    cc = classes or conjugacy_classes(table)
    order, k = table.order, len(cc)
    if k == 1:
        return DegreeMultiset((1,), order)
    exponent = reduce(math.lcm, (_order(table.perms[r]) for r in cc.reps), 1)
    if q is None:
        q = field_prime(order, exponent)
    elif not (is_prime(q) and q % exponent == 1 and q * q > 4 * order):
        raise CharacterDegreeError(f"{q} is not an admissible field prime")
    index = table.index
    inv_class = [cc.class_of[index[_inverse(table.perms[r])]] for r in cc.reps]

    spaces = [np.eye(k, dtype=np.int64)]
    for r in range(1, k):
        if all(s.shape[0] == 1 for s in spaces):
            break
        M = class_matrix(table, cc, r) % q
        nxt = []
        for s in spaces:
            nxt.extend([s] if s.shape[0] == 1 else _split(s, M, q))
        spaces = nxt
    if len(spaces) != k:
        raise CharacterDegreeError("common eigenspaces did not separate")

    degrees = tuple(_degree_from_central_character(s[0], cc, inv_class, order, q) for s in spaces)
    result = DegreeMultiset(degrees, order)
    if not result.is_consistent():
        raise CharacterDegreeError(f"degrees {result.degrees} fail the sum-of-squares check for order {order}")
    return result

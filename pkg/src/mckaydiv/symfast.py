"""Closed-form degree multisets for symmetric groups and their Sylow normalizers.

For p <= n < p^2 a Sylow p-subgroup of S_n is elementary abelian of rank
a = n // p, and its normalizer is (AGL(1, p) wr S_a) x S_b with b = n % p.
All degrees here come from hook lengths and the wreath product formula, so
these routes reach far beyond anything that can be enumerated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator

from ._nt import require_prime
from .chardeg import DegreeMultiset, PPrimeDegrees, pprime_filter

PARTITION_BOUND = 60


class OutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for x in self.parts if x > j) for j in range(self.parts[0])))

    def hooks(self) -> list[int]:
        conj = self.conjugate().parts
        return [(row - j - 1) + (conj[j] - i - 1) + 1 for i, row in enumerate(self.parts) for j in range(row)]


@dataclass(frozen=True)
class NormalizerShape:
    p: int
    n: int

    def __post_init__(self):
        require_prime(self.p)
        if not self.p <= self.n < self.p * self.p:
            raise OutOfRange(f"closed form needs p <= n < p^2, got n={self.n}, p={self.p}")

    @property
    def a(self) -> int:
        return self.n // self.p

    @property
    def b(self) -> int:
        return self.n % self.p

    @property
    def order(self) -> int:
        p = self.p
        return (p * (p - 1)) ** self.a * math.factorial(self.a) * math.factorial(self.b)


def _gen_partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _gen_partitions(n - first, first):
            yield (first,) + rest


def partitions(n: int, bound: int = PARTITION_BOUND) -> list[Partition]:
    """All partitions of n, reverse lexicographic: [n], [n-1, 1], ..., [1^n]."""
    if n < 0:
        raise OutOfRange("n must be nonnegative")
    if n > bound:
        raise OutOfRange(f"n={n} exceeds the partition bound {bound}")
    return [Partition(p) for p in _gen_partitions(n, n)]


def hook_degree(lam: Partition) -> int:
    return math.factorial(lam.n) // math.prod(lam.hooks())


@lru_cache(maxsize=None)
def _symmetric_degrees(n: int, bound: int) -> tuple[int, ...]:
    return tuple(hook_degree(lam) for lam in partitions(n, bound))


def symmetric_degrees(n: int, bound: int = PARTITION_BOUND) -> DegreeMultiset:
    return DegreeMultiset(_symmetric_degrees(n, bound), math.factorial(n))


def symmetric_pprime_degrees(n: int, p: int, bound: int = PARTITION_BOUND) -> PPrimeDegrees:
    return pprime_filter(symmetric_degrees(n, bound), p)


def agl1_degrees(p: int) -> DegreeMultiset:
    """AGL(1, p): p - 1 linear characters and one of degree p - 1."""
    require_prime(p)
    return DegreeMultiset((1,) * (p - 1) + (p - 1,), p * (p - 1))


def wreath_degrees(base: DegreeMultiset, k: int, bound: int = PARTITION_BOUND) -> DegreeMultiset:
    """Degrees of (base group) wr S_k.

    An irreducible is a choice of partition for each irreducible of the
    base (each occurrence in the multiset is a separate character) with
    sizes summing to k; its degree is
    k! * prod(theta(1)^|lam| * hook_degree(lam) / |lam|!).
    """
    if k < 1:
        raise OutOfRange("k must be positive")
    if k > bound:
        raise OutOfRange(f"k={k} exceeds the partition bound {bound}")
    slots = base.degrees
    # per slot and size: the multiset of theta(1)^m * hook_degree(lam) over partitions lam of m
    table = {
        (d, m): [d**m * hook_degree(lam) for lam in partitions(m, bound)]
        for d in set(slots)
        for m in range(k + 1)
    }
    kfact = math.factorial(k)
    out: list[int] = []
    for sizes in _compositions(k, len(slots)):
        denom = math.prod(math.factorial(m) for m in sizes)
        coeff = kfact // denom
        factors = [table[(d, m)] for d, m in zip(slots, sizes) if m]
        for combo in product(*factors):
            out.append(coeff * math.prod(combo))
    return DegreeMultiset(tuple(out), base.group_order**k * kfact)


def _compositions(k: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of k into ``parts`` ordered summands."""
    if parts == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in _compositions(k - first, parts - 1):
            yield (first,) + rest


def product_degrees(x: DegreeMultiset, y: DegreeMultiset) -> DegreeMultiset:
    return DegreeMultiset(tuple(d * e for d in x for e in y), x.group_order * y.group_order)


def normalizer_degrees(n: int, p: int, bound: int = PARTITION_BOUND) -> DegreeMultiset:
    shape = NormalizerShape(p, n)
    return product_degrees(wreath_degrees(agl1_degrees(p), shape.a, bound), symmetric_degrees(shape.b, bound))


def normalizer_pprime_degrees(n: int, p: int, bound: int = PARTITION_BOUND) -> PPrimeDegrees:
    """Degrees prime to p of N_{S_n}(P) for p <= n < p^2."""
    return pprime_filter(normalizer_degrees(n, p, bound), p)

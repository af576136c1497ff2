"""Divisibility bijections between two degree lists.

We look for a permutation B' of B with B'[i] | A[i] for every i.  That is a
perfect matching in the bipartite graph joining each a in A to the entries of
B dividing it, found here with Kuhn's augmenting paths (all weights equal).
When none exists the answer carries a Hall violator: a set of A-entries with
fewer neighbours than members.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence


@dataclass(frozen=True)
class DivisibilityGraph:
    a: tuple[int, ...]
    b: tuple[int, ...]
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def balanced(self) -> bool:
        return len(self.a) == len(self.b)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs]

    def neighborhood(self, rows: Sequence[int]) -> set[int]:
        out: set[int] = set()
        for i in rows:
            out.update(self.adjacency[i])
        return out


@dataclass(frozen=True)
class MatchingResult:
    """Exactly one of ``bijection`` (sigma[i] = j pairs A[i] with B[j]) or
    ``violator`` is set, unless the lists differ in length."""

    bijection: tuple[int, ...] | None = None
    violator: tuple[int, ...] | None = None
    count_mismatch: bool = False

    @property
    def exists(self) -> bool:
        return self.bijection is not None


def build_graph(a: Sequence[int], b: Sequence[int]) -> DivisibilityGraph:
    a, b = tuple(int(x) for x in a), tuple(int(x) for x in b)
    if any(x <= 0 for x in a + b):
        raise ValueError("degrees must be positive integers")
    adj = tuple(tuple(j for j, y in enumerate(b) if x % y == 0) for x in a)
    return DivisibilityGraph(a, b, adj)


def _augment(adj: tuple[tuple[int, ...], ...], owner: list[int | None], root: int) -> bool:
    """One augmenting-path search from ``root``; flips the path on success."""
    seen_b = [False] * len(owner)
    # iterative DFS; stack frames are [a-vertex, next neighbour position]
    stack = [[root, 0]]
    path_b: list[int] = []
    while stack:
        top = stack[-1]
        i, pos = top
        nbrs = adj[i]
        while pos < len(nbrs) and seen_b[nbrs[pos]]:
            pos += 1
        if pos == len(nbrs):
            stack.pop()
            if path_b:
                path_b.pop()
            continue
        j = nbrs[pos]
        top[1] = pos + 1
        seen_b[j] = True
        path_b.append(j)
        if owner[j] is None:
            for (i, _), j in zip(stack, path_b):
                owner[j] = i
            return True
        stack.append([owner[j], 0])
    return False


def _pruned_violator(g: DivisibilityGraph, owner: list[int | None], free: list[int]) -> tuple[int, ...]:
    # A-vertices reachable from the unmatched ones along alternating paths
    # have too few neighbours; drop members while that stays true.
    reach = set(free)
    queue = list(free)
    while queue:
        i = queue.pop()
        for j in g.adjacency[i]:
            k = owner[j]
            if k is not None and k not in reach:
                reach.add(k)
                queue.append(k)
    members = sorted(reach)
    cover = [0] * len(g.b)
    for i in members:
        for j in g.adjacency[i]:
            cover[j] += 1
    size, nbrs = len(members), sum(1 for c in cover if c)
    keep = set(members)
    for i in members:
        lost = sum(1 for j in g.adjacency[i] if cover[j] == 1)
        if nbrs - lost < size - 1:
            keep.discard(i)
            size -= 1
            nbrs -= lost
            for j in g.adjacency[i]:
                cover[j] -= 1
    return tuple(sorted(keep))


def kuhn_match(g: DivisibilityGraph) -> MatchingResult:
    """Perfect matching by augmenting paths, or a Hall violator.

    A-vertices are tried in list order and neighbours in B-list order, so the
    answer is a function of the two lists alone.  A failure is certified by
    a violator pruned greedily in index order.
    """
    if not g.balanced:
        return MatchingResult(count_mismatch=True)
    owner: list[int | None] = [None] * len(g.b)  # owner[j] = A-index matched to B[j]
    free = [i for i in range(len(g.a)) if not _augment(g.adjacency, owner, i)]
    if free:
        return MatchingResult(violator=_pruned_violator(g, owner, free))
    sigma = [0] * len(g.a)
    for j, i in enumerate(owner):
        sigma[i] = j
    return MatchingResult(bijection=tuple(sigma))


def brute_force_match(a: Sequence[int], b: Sequence[int], limit: int = 9) -> bool:
    """Try every ordering of B; only for tiny lists."""
    if len(a) != len(b):
        return False
    if len(a) > limit:
        raise ValueError(f"brute force refuses {len(a)}! orderings (limit {limit})")
    return any(all(x % y == 0 for x, y in zip(a, perm)) for perm in permutations(b))


def verify_result(g: DivisibilityGraph, r: MatchingResult) -> bool:
    """Check a bijection or violator against the raw lists, not the adjacency."""
    if r.count_mismatch:
        return len(g.a) != len(g.b)
    if r.bijection is not None:
        sigma = r.bijection
        if len(sigma) != len(g.a) or len(g.a) != len(g.b) or sorted(sigma) != list(range(len(g.b))):
            return False
        return all(g.a[i] % g.b[j] == 0 for i, j in enumerate(sigma))
    if r.violator is not None:
        S = set(r.violator)
        if not S or not S <= set(range(len(g.a))):
            return False
        nbrs = {j for j, y in enumerate(g.b) for i in S if g.a[i] % y == 0}
        return len(nbrs) < len(S)
    return False


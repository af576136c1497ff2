"""Conjugacy classes, Sylow subgroups, normalizers and derived series.

Subgroups live as index sets into an ambient :class:`ElementTable`; a
subgroup is only turned into a table of its own (``subgroup_table``) when
something needs to enumerate it, such as character degrees of a normalizer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._nt import p_part, require_prime
from .permcore import ElementTable, Images, _conjugate, _inverse, _order, closure


@dataclass(frozen=True)
class Subgroup:
    members: frozenset[int]
    generators: tuple[int, ...] = field(default=())

    @property
    def order(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)


@dataclass
class ConjugacyClasses:
    reps: list[int]
    members: list[list[int]]
    class_of: list[int]

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def sizes(self) -> list[int]:
        return [len(m) for m in self.members]


def _generated(table: ElementTable, gen_idx: list[int]) -> frozenset[int]:
    gens = [table.perms[i] for i in gen_idx]
    raw = closure(gens, table.degree, cap=table.order)
    return frozenset(table.index[g] for g in raw)


def subgroup_from_generators(table: ElementTable, gen_idx: list[int]) -> Subgroup:
    gen_idx = [i for i in gen_idx if i != 0]
    return Subgroup(_generated(table, gen_idx), tuple(gen_idx))


def _with_generators(table: ElementTable, members: frozenset[int]) -> Subgroup:
    """Attach a small generating set, picked greedily in table order."""
    gens: list[int] = []
    cur: frozenset[int] = frozenset([0])
    for i in sorted(members):
        if len(cur) == len(members):
            break
        if i not in cur:
            gens.append(i)
            cur = _generated(table, gens)
    return Subgroup(members, tuple(gens))


def whole_group(table: ElementTable) -> Subgroup:
    return Subgroup(frozenset(range(table.order)), tuple(i for i in table.generator_indices() if i != 0))


def trivial_subgroup() -> Subgroup:
    return Subgroup(frozenset([0]), ())


def conjugacy_classes(table: ElementTable) -> ConjugacyClasses:
    """Orbits of the conjugation action, found by closing under the generators.

    Classes are listed by their least element index, which is also the
    representative.
    """
    perms, index = table.perms, table.index
    gens = table.generators
    class_of = [-1] * table.order
    reps: list[int] = []
    members: list[list[int]] = []
    for start in range(table.order):
        if class_of[start] >= 0:
            continue
        c = len(reps)
        reps.append(start)
        orbit = [start]
        class_of[start] = c
        k = 0
        while k < len(orbit):
            g = perms[orbit[k]]
            k += 1
            for x in gens:
                j = index[_conjugate(g, x)]
                if class_of[j] < 0:
                    class_of[j] = c
                    orbit.append(j)
        orbit.sort()
        members.append(orbit)
    return ConjugacyClasses(reps, members, class_of)


def normalizer(table: ElementTable, H: Subgroup) -> Subgroup:
    """All x in G with H^x = H, by a scan of the whole table."""
    if H.order == 1 or H.order == table.order:
        return whole_group(table)
    hset = {table.perms[i] for i in H.members}
    hgens = [table.perms[i] for i in (H.generators or H.sorted_members())]
    found = []
    for i, x in enumerate(table.perms):
        for h in hgens:
            if _conjugate(h, x) not in hset:
                break
        else:
            found.append(i)
    return _with_generators(table, frozenset(found))


def sylow_subgroup(table: ElementTable, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown one normalizing p-element at a time.

    The first suitable element in table order is taken at each step, so the
    result is deterministic.
    """
    require_prime(p)
    target = p_part(table.order, p)
    H = trivial_subgroup()
    while H.order < target:
        N = normalizer(table, H)
        pick = None
        for i in N.sorted_members():
            if i in H.members:
                continue
            o = _order(table.perms[i])
            if p_part(o, p) == o:
                pick = i
                break
        if pick is None:
            raise AssertionError("no p-element in N(H) \\ H below the Sylow order")
        H = subgroup_from_generators(table, list(H.generators) + [pick])
    return H


def subgroup_table(table: ElementTable, H: Subgroup) -> ElementTable:
    """Re-enumerate ``H`` from its generators as a table in its own right."""
    gens: list[Images] = [table.perms[i] for i in H.generators]
    if not gens:
        gens = [table.perms[0]]
    return ElementTable(closure(gens, table.degree, cap=table.order), gens)


def _commutator(a: Images, b: Images) -> Images:
    # a^-1 b^-1 a b, applied left to right
    ai, bi = _inverse(a), _inverse(b)
    return tuple([b[a[bi[ai[i]]]] for i in range(len(a))])


def _normal_closure(table: ElementTable, seeds: list[Images], ambient_gens: list[Images]) -> tuple[set[Images], list[Images]]:
    degree = table.degree
    gens = [s for s in seeds if s != table.perms[0]]
    cur = set(closure(gens, degree, cap=table.order)) if gens else {table.perms[0]}
    changed = True
    while changed:
        changed = False
        for s in list(gens):
            for x in ambient_gens:
                c = _conjugate(s, x)
                if c not in cur:
                    gens.append(c)
                    cur = set(closure(gens, degree, cap=table.order))
                    changed = True
    return cur, gens


def derived_subgroup(table: ElementTable, H: Subgroup | None = None) -> Subgroup:
    H = H or whole_group(table)
    hg = [table.perms[i] for i in H.generators]
    seeds = [_commutator(a, b) for k, a in enumerate(hg) for b in hg[k + 1:]]
    members, gens = _normal_closure(table, seeds, hg)
    return Subgroup(frozenset(table.index[g] for g in members), tuple(table.index[g] for g in gens))


def derived_series_solvable(table: ElementTable) -> tuple[bool, list[int]]:
    """Follow G > G' > G'' > ... until it stabilizes.

    Returns ``(solvable, orders)`` where ``orders`` starts with |G| and ends at
    1 exactly when the group is solvable.
    """
    H = whole_group(table)
    orders = [H.order]
    while H.order > 1:
        D = derived_subgroup(table, H)
        if D.order == H.order:
            return False, orders
        orders.append(D.order)
        H = D
    return True, orders


def linear_character_count(table: ElementTable) -> int:
    """|G : G'|, the number of degree-one characters."""
    return table.order // derived_subgroup(table).order

"""Per-(group, prime) divisibility checks, the symmetric-group table, batch sweeps.

A check gathers two sorted lists, the degrees prime to p of G and of the
normalizer of a Sylow p-subgroup, and asks the matcher for a bijection in
which every normalizer degree divides its partner.  Three routes exist:

* ``trivial``: p does not divide |G|, so the normalizer is G itself;
* ``symfast``: G = S_n with p <= n < p^2, both lists from closed formulas;
* ``generic``: enumerate G, find P and N_G(P), compute both degree sets.

Anything else beyond the enumeration cap is reported as ``out_of_scale``.
"""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import symfast
from ._nt import prime_factors, require_prime
from .chardeg import DegreeMultiset, character_degrees, pprime_filter
from .corpus import CorpusEntry, CorpusError
from .matching import build_graph, kuhn_match, verify_result
from .permcore import DEFAULT_CAP, CapExceeded, ElementTable, GroupSpec, family_order, generate_elements
from .structure import derived_series_solvable, normalizer, subgroup_table, sylow_subgroup

log = logging.getLogger(__name__)

ROUTES = ("trivial", "generic", "symfast")
VERDICTS = ("bijection", "no_bijection", "count_mismatch", "out_of_scale")


class ReportInvariantError(AssertionError):
    pass


@dataclass
class CheckReport:
    group_id: str
    group_order: int | None
    prime: int
    route: str | None
    a_degrees: list[int]
    b_degrees: list[int]
    verdict: str
    bijection: list[tuple[int, int]] | None = None
    violator: list[int] | None = None
    elapsed_ms: dict[str, float] = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "group_id": self.group_id,
            "group_order": None if self.group_order is None else str(self.group_order),
            "prime": self.prime,
            "route": self.route,
            "a_degrees": [str(d) for d in self.a_degrees],
            "b_degrees": [str(d) for d in self.b_degrees],
            "verdict": self.verdict,
            "bijection": None if self.bijection is None else [[str(a), str(b)] for a, b in self.bijection],
            "violator": None if self.violator is None else [str(d) for d in self.violator],
            "elapsed_ms": dict(self.elapsed_ms) if timing else None,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing))

    def validate(self) -> None:
        """Re-check the emitted evidence from the lists alone."""
        g = build_graph(self.a_degrees, self.b_degrees)
        if self.verdict == "bijection":
            if self.route == "trivial":
                if self.a_degrees != self.b_degrees or (self.group_order and self.group_order % self.prime == 0):
                    raise ReportInvariantError(f"{self.group_id}: bad trivial report")
            pairs = self.bijection or []
            if sorted(a for a, _ in pairs) != self.a_degrees or sorted(b for _, b in pairs) != self.b_degrees:
                raise ReportInvariantError(f"{self.group_id}: pairing is not a bijection of the lists")
            if any(a % b for a, b in pairs):
                raise ReportInvariantError(f"{self.group_id}: pairing violates divisibility")
        elif self.verdict == "no_bijection":
            S = self.violator or []
            nbrs = {j for j, b in enumerate(self.b_degrees) if any(a % b == 0 for a in S)}
            if not S or len(nbrs) >= len(S) or len(g.a) != len(g.b):
                raise ReportInvariantError(f"{self.group_id}: violator does not certify failure")


class _Timer:
    def __init__(self):
        self.phases: dict[str, float] = {}
        self._t0 = time.perf_counter()
        self._last = self._t0

    def lap(self, name: str) -> None:
        now = time.perf_counter()
        self.phases[name] = round(self.phases.get(name, 0.0) + (now - self._last) * 1000, 3)
        self._last = now

    def done(self) -> dict[str, float]:
        self.phases["total"] = round((time.perf_counter() - self._t0) * 1000, 3)
        return self.phases


class GroupData:
    """Lazily computed facts about one group, shared across primes."""

    def __init__(self, spec: GroupSpec, cap: int = DEFAULT_CAP):
        self.spec = spec
        self.cap = cap
        self._table: ElementTable | None = None
        self._degrees: DegreeMultiset | None = None
        self._enumerated: DegreeMultiset | None = None
        self._order: int | None = None

    @property
    def symmetric_n(self) -> int | None:
        return self.spec.params[0] if self.spec.family == "symmetric" else None

    def order(self) -> int:
        """Exact order; raises CapExceeded for oversized generator groups."""
        if self._order is None:
            if self.spec.family is not None:
                self._order = family_order(self.spec.family, self.spec.params)
            else:
                self._order = self.table().order
        return self._order

    def table(self) -> ElementTable:
        if self._table is None:
            self._table = generate_elements(self.spec, self.cap)
            self._order = self._table.order
        return self._table

    def fits(self) -> bool:
        try:
            return self.order() <= self.cap
        except CapExceeded:
            return False

    def degrees(self) -> DegreeMultiset:
        """Cheapest available degree multiset (hook lengths for S_n)."""
        if self._degrees is None:
            n = self.symmetric_n
            if n is not None and n <= symfast.PARTITION_BOUND:
                self._degrees = symfast.symmetric_degrees(n)
            else:
                self._degrees = self.enumerated_degrees()
        return self._degrees

    def enumerated_degrees(self) -> DegreeMultiset:
        """Degrees from the class matrices of the enumerated group."""
        if self._enumerated is None:
            self._enumerated = character_degrees(self.table())
        return self._enumerated

    def degrees_known(self) -> bool:
        n = self.symmetric_n
        return (n is not None and n <= symfast.PARTITION_BOUND) or self.fits()


def _lists(data: GroupData, p: int, timer: _Timer, generic: bool = False) -> tuple[str, list[int], list[int] | None, int | None]:
    """Route and the two sorted p'-degree lists (B is None when unreachable).

    ``generic`` skips the closed-form route so the two can be compared.
    """
    try:
        order = data.order()
    except CapExceeded:
        return "out_of_scale", [], None, None
    n = data.symmetric_n
    if order % p:
        a = sorted(data.degrees()) if data.degrees_known() else []
        timer.lap("degrees")
        return "trivial", a, list(a), order
    if n is not None and p <= n < p * p and not (generic and order <= data.cap):
        a = list(symfast.symmetric_pprime_degrees(n, p))
        b = list(symfast.normalizer_pprime_degrees(n, p))
        timer.lap("degrees")
        return "symfast", a, b, order
    if order > data.cap:
        a = list(symfast.symmetric_pprime_degrees(n, p)) if n is not None and n <= symfast.PARTITION_BOUND else []
        return "out_of_scale", a, None, order
    table = data.table()
    timer.lap("enumerate")
    P = sylow_subgroup(table, p)
    timer.lap("sylow")
    N = normalizer(table, P)
    timer.lap("normalizer")
    a = list(pprime_filter(data.enumerated_degrees(), p))
    b = list(pprime_filter(character_degrees(subgroup_table(table, N)), p))
    timer.lap("degrees")
    log.debug("%s p=%d: |P|=%d |N|=%d", data.spec.id, p, P.order, N.order)
    return "generic", a, b, order


def check_group(spec: GroupSpec | GroupData, p: int, cap: int = DEFAULT_CAP, generic: bool = False) -> CheckReport:
    """Decide whether a divisibility bijection Irr_p'(G) -> Irr_p'(N_G(P)) exists.

    With ``generic=True`` a symmetric group small enough to enumerate goes
    through enumeration even when the closed forms apply.
    """
    require_prime(p)
    data = spec if isinstance(spec, GroupData) else GroupData(spec, cap)
    timer = _Timer()
    route, a, b, order = _lists(data, p, timer, generic)
    report = CheckReport(data.spec.id, order, p, route if route != "out_of_scale" else None, a, b or [], "out_of_scale")
    if route == "trivial":
        report.verdict = "bijection"
        report.bijection = list(zip(a, a))
    elif b is not None:
        g = build_graph(a, b)
        r = kuhn_match(g)
        timer.lap("match")
        if not verify_result(g, r):
            raise ReportInvariantError(f"{data.spec.id}: matcher produced an unverifiable result")
        if r.count_mismatch:
            report.verdict = "count_mismatch"
            log.warning("%s p=%d: |A|=%d but |B|=%d; McKay counterexample candidate", data.spec.id, p, len(a), len(b))
        elif r.bijection is not None:
            report.verdict = "bijection"
            report.bijection = [(a[i], b[j]) for i, j in enumerate(r.bijection)]
        else:
            report.verdict = "no_bijection"
            report.violator = [a[i] for i in r.violator or ()]
    report.elapsed_ms = timer.done()
    report.validate()
    return report


def degrees_command(spec: GroupSpec, p: int, cap: int = DEFAULT_CAP, generic: bool = False) -> tuple[str, list[int], list[int] | None]:
    """The route and the sorted lists A and B, without matching."""
    require_prime(p)
    route, a, b, _ = _lists(GroupData(spec, cap), p, _Timer(), generic)
    return route, a, b


# -- symmetric table ---------------------------------------------------------

@dataclass
class TableCell:
    prime: int
    n: int
    kind: str  # trivial | diagonal | checked | out_of_scale
    report: CheckReport

    @property
    def mark(self) -> str:
        if self.report.verdict == "bijection":
            return "Y"
        if self.report.verdict == "out_of_scale":
            return "."
        return "X"


@dataclass
class SymmetricTable:
    primes: list[int]
    columns: list[int]
    cells: list[list[TableCell]]

    def render(self) -> str:
        width = max(len(f"S_{n}") for n in self.columns) + 1
        head = " " * 6 + "".join(f"S_{n}".rjust(width) for n in self.columns)
        rows = [head]
        for p, row in zip(self.primes, self.cells):
            marks = "".join((c.mark + ("*" if c.kind == "diagonal" else "'" if c.kind == "trivial" else " ")).rjust(width) for c in row)
            rows.append(f"p={p:<4}" + marks)
        rows.append("Y bijection, X none, . out of scale; ' trivial (p > n), * diagonal (n = p)")
        return "\n".join(rows)

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "primes": self.primes,
            "columns": self.columns,
            "cells": [[{"kind": c.kind, **c.report.to_dict(timing)} for c in row] for row in self.cells],
        }


def symmetric_table(primes: Sequence[int], max_n: int, cap: int = DEFAULT_CAP) -> SymmetricTable:
    """Rows are primes p, columns are S_q for the listed primes q <= max_n."""
    primes = list(primes)
    if primes != sorted(primes):
        raise ValueError("primes must be listed in increasing order")
    for p in primes:
        require_prime(p)
    columns = [q for q in primes if q <= max_n]
    groups = {n: GroupData(GroupSpec.named("symmetric", n, id=f"S{n}"), cap) for n in columns}
    cells = []
    for p in primes:
        row = []
        for n in columns:
            rep = check_group(groups[n], p, cap)
            kind = "trivial" if p > n else "diagonal" if p == n else "out_of_scale" if rep.verdict == "out_of_scale" else "checked"
            row.append(TableCell(p, n, kind, rep))
        cells.append(row)
    return SymmetricTable(primes, columns, cells)


# -- batch -------------------------------------------------------------------

@dataclass
class EntryResult:
    entry_id: str
    reports: list[CheckReport] = field(default_factory=list)
    error: str | None = None
    solvable: bool | None = None
    symmetric_prime_power: int | None = None  # p when the group is S_{p^a}


@dataclass
class BatchSummary:
    entries: int = 0
    errors: int = 0
    verdicts: dict[str, int] = field(default_factory=lambda: {v: 0 for v in VERDICTS})
    counterexamples: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if self.counterexamples:
            return 1
        return 2 if self.errors else 0

    def to_dict(self) -> dict:
        return {
            "entries": self.entries,
            "errors": self.errors,
            "verdicts": self.verdicts,
            "counterexamples": self.counterexamples,
            "exit_code": self.exit_code,
        }


def _prime_power_base(n: int) -> int | None:
    ps = prime_factors(n) if n > 1 else []
    return ps[0] if len(ps) == 1 else None


def run_entry(entry: CorpusEntry, primes: str | Sequence[int] = "all", cap: int = DEFAULT_CAP) -> EntryResult:
    res = EntryResult(entry.id)
    try:
        spec = entry.spec()
        data = GroupData(spec, cap)
        try:
            order = data.order()
        except CapExceeded:
            order = None
        if order is not None and entry.order is not None and order != entry.order:
            raise CorpusError(f"declared order {entry.order} but computed {order}")
        res.solvable = entry.solvable
        if order is not None and data.fits():
            solvable, _ = derived_series_solvable(data.table())
            if entry.solvable is not None and solvable != entry.solvable:
                raise CorpusError(f"declared solvable={entry.solvable} but computed {solvable}")
            res.solvable = solvable
        if data.symmetric_n is not None:
            res.symmetric_prime_power = _prime_power_base(data.symmetric_n)
        if primes == "all":
            if order is None:
                raise CorpusError("group exceeds the cap; cannot list its prime divisors")
            plist = prime_factors(order) if order > 1 else []
        else:
            plist = list(primes)
        res.reports = [check_group(data, p, cap) for p in plist]
    except (CorpusError, ValueError) as exc:
        res.error = str(exc)
        res.reports = []
    return res


def _run_entry_star(args):
    return run_entry(*args)


def _merge(items, computed) -> Iterator[EntryResult]:
    computed = iter(computed)
    for e in items:
        if isinstance(e, CorpusError):
            yield EntryResult("?", error=str(e))
        else:
            yield next(computed)


def batch(
    entries: Iterable[CorpusEntry | CorpusError],
    primes: str | Sequence[int] = "all",
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> Iterator[EntryResult]:
    """Results in input order; parse errors come through as error results."""
    if primes != "all":
        for p in primes:
            require_prime(p)
    items = list(entries)
    good = [(e, primes, cap) for e in items if isinstance(e, CorpusEntry)]
    if jobs > 1 and len(good) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            yield from _merge(items, pool.map(_run_entry_star, good))
    else:
        yield from _merge(items, (run_entry(*g) for g in good))


def summarize(results: Iterable[EntryResult]) -> BatchSummary:
    s = BatchSummary()
    for r in results:
        s.entries += 1
        if r.error:
            s.errors += 1
        for rep in r.reports:
            s.verdicts[rep.verdict] += 1
            covered = r.solvable or r.symmetric_prime_power == rep.prime
            if rep.verdict == "count_mismatch" or (rep.verdict == "no_bijection" and covered):
                s.counterexamples.append(f"{r.entry_id} p={rep.prime}")
    return s

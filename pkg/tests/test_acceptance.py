"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; they are printed in the terminal summary
of a pytest run and by ``python tests/test_acceptance.py``.
"""

import itertools
import json
import random
import time
from functools import lru_cache

import pytest

from mckaydiv.chardeg import character_degrees
from mckaydiv.checker import batch, check_group, degrees_command, summarize, symmetric_table
from mckaydiv.corpus import load_bundled
from mckaydiv.matching import brute_force_match, build_graph, kuhn_match, verify_result
from mckaydiv.permcore import GroupSpec, generate_elements
from mckaydiv.structure import conjugacy_classes, linear_character_count
from mckaydiv.symfast import agl1_degrees, normalizer_pprime_degrees, symmetric_degrees, wreath_degrees

RESULTS: list[str] = []


def record(name: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


# -- criterion 1 ---------------------------------------------------------------

SMALL_EDGES = {(6, 3), (6, 2), (10, 5), (10, 2), (22, 2), (26, 13), (26, 2)}


def _small_example():
    g = build_graph([6, 10, 22, 26], [3, 5, 13, 2])
    return g, kuhn_match(g)


def _small_example_json() -> str:
    g, r = _small_example()
    return json.dumps({"edges": g.edges(), "bijection": list(r.bijection)})


def test_c1_small_example_graph():
    _small_example()
    t = time.perf_counter()
    g, r = _small_example()
    ms = (time.perf_counter() - t) * 1e3
    edges = {(g.a[i], g.b[j]) for i, j in g.edges()}
    ok = edges == SMALL_EDGES and len(g.edges()) == 7 and r.exists and verify_result(g, r) and ms < 1.0
    record("C1 divisibility graph edges and bijection", ok, f"{ms:.3f} ms")


# -- criterion 2 ---------------------------------------------------------------

def test_c2_s25_count():
    t = time.perf_counter()
    route, a, _ = degrees_command(GroupSpec.named("symmetric", 25), 5)
    s = time.perf_counter() - t
    record("C2 S_25 at p=5 has 25 p'-degrees", len(a) == 25 and s < 1.0, f"|A|={len(a)}, route {route}, {s:.2f} s")


# -- criterion 3 ---------------------------------------------------------------

PRIMES = [2, 3, 5, 7, 11, 13, 17, 19]
EXPECTED = {
    2: {2: "Y", 3: "Y", 5: "Y", 7: "Y", 11: ".", 13: ".", 17: ".", 19: "."},
    3: {3: "Y", 5: "Y", 7: "X", 11: ".", 13: ".", 17: ".", 19: "."},
    5: {5: "Y", 7: "X", 11: "X", 13: "X", 17: "X", 19: "Y"},
    7: {7: "Y", 11: "Y", 13: "X", 17: "Y", 19: "Y"},
    11: {11: "Y", 13: "Y", 17: "X", 19: "X"},
    13: {13: "Y", 17: "Y", 19: "X"},
    17: {17: "Y", 19: "Y"},
    19: {19: "Y"},
}


def test_c3_symmetric_table():
    t = time.perf_counter()
    tab = symmetric_table(PRIMES, 19)
    s = time.perf_counter() - t
    wrong = []
    for p, row in zip(tab.primes, tab.cells):
        for cell in row:
            want = EXPECTED[p].get(cell.n, "Y")
            if cell.n < p:
                good = cell.kind == "trivial" and cell.mark == "Y"
            else:
                good = cell.mark == want
            if not good:
                wrong.append(f"p={p} S_{cell.n}: {cell.mark}")
    record("C3 Table of S_q against p", not wrong and s < 300, f"{s:.1f} s" + (f", wrong: {wrong}" if wrong else ""))


# -- criterion 4 ---------------------------------------------------------------

def test_c4_degrees_against_hooks():
    bad = []
    for n in range(3, 7):
        table = generate_elements(GroupSpec.named("symmetric", n))
        if character_degrees(table).degrees != symmetric_degrees(n).degrees:
            bad.append(n)
    record("C4a character degrees of S_3..S_6 equal hook-length degrees", not bad, f"mismatch at {bad}" if bad else "")


def test_c4_corpus_invariants():
    t = time.perf_counter()
    bad, count = [], 0
    for name in ("solvable.jsonl", "nonsolvable.jsonl"):
        for e in load_bundled(name):
            if e.order > 2000:
                continue
            table = generate_elements(e.spec())
            cc = conjugacy_classes(table)
            d = character_degrees(table, cc)
            ok = (
                d.square_sum() == table.order
                and all(table.order % x == 0 for x in d)
                and len(d) == len(cc.reps)
                and d.degrees.count(1) == linear_character_count(table)
            )
            count += 1
            if not ok:
                bad.append(e.id)
    s = time.perf_counter() - t
    record("C4b degree invariants on bundled groups of order <= 2000", not bad and s < 600,
           f"{count} groups, {s:.1f} s" + (f", failing {bad}" if bad else ""))


# -- criterion 5 ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _brute(a, b):
    return brute_force_match(a, b)


def _agrees(a, b) -> bool:
    g = build_graph(a, b)
    r = kuhn_match(g)
    return verify_result(g, r) and r.exists == _brute(tuple(sorted(a)), tuple(sorted(b)))


@pytest.mark.slow
def test_c5_matching_oracle():
    t = time.perf_counter()
    total = bad = 0
    for n in range(5):
        for a in itertools.product(range(1, 7), repeat=n):
            for b in itertools.product(range(1, 7), repeat=n):
                total += 1
                bad += not _agrees(a, b)
    rng = random.Random(5)
    for _ in range(1000):
        n = rng.randint(0, 7)
        a = tuple(rng.randint(1, 60) for _ in range(n))
        b = tuple(rng.randint(1, 12) for _ in range(n))
        total += 1
        bad += not _agrees(a, b)
    s = time.perf_counter() - t
    record("C5 matcher agrees with brute force", bad == 0, f"{total} instances, {bad} disagreements, {s:.1f} s")


# -- criterion 6 ---------------------------------------------------------------

def test_c6_wreath_and_normalizer():
    w = GroupSpec.from_cycles("AGL(1,5) wr S2", ["(1,2,3,4,5)", "(2,3,5,4)", "(1,6)(2,7)(3,8)(4,9)(5,10)"])
    table = generate_elements(w)
    formula = wreath_degrees(agl1_degrees(5), 2)
    ok_w = table.order == 800 and character_degrees(table).degrees == formula.degrees
    generic = check_group(GroupSpec.named("symmetric", 7), 3, generic=True)
    ok_n = generic.route == "generic" and list(normalizer_pprime_degrees(7, 3).degrees) == generic.b_degrees
    record("C6 wreath formula and normalizer formula against enumeration", ok_w and ok_n,
           f"order {table.order}, {len(formula)} degrees; B = {generic.b_degrees}")


# -- criterion 7 ---------------------------------------------------------------

@pytest.mark.slow
@pytest.mark.parametrize("n, p", [(4, 2), (8, 2), (9, 3)])
def test_c7_prime_power_symmetric(n, p):
    t = time.perf_counter()
    r = check_group(GroupSpec.named("symmetric", n), p)
    s = time.perf_counter() - t
    ok = r.route == "generic" and r.verdict == "bijection" and s < 900
    record(f"C7 S_{n} at p={p} has a bijection", ok, f"{r.route}, {r.verdict}, {s:.1f} s")


# -- criterion 8 ---------------------------------------------------------------

@pytest.mark.slow
def test_c8_solvable_sweep():
    t = time.perf_counter()
    summary = summarize(batch(load_bundled("solvable.jsonl")))
    s = time.perf_counter() - t
    v = summary.verdicts
    ok = v.get("no_bijection", 0) == 0 and v.get("count_mismatch", 0) == 0 and summary.exit_code == 0
    record("C8 solvable corpus sweep finds no failure", ok,
           f"{summary.entries} groups, {sum(v.values())} checks, {dict(v)}, exit {summary.exit_code}, {s:.1f} s")


# -- criterion 9 ---------------------------------------------------------------

@pytest.mark.parametrize("family, n, q, p", [("gl", 2, 2, 2), ("gl", 2, 3, 3), ("sl", 2, 3, 3), ("gl", 2, 4, 2), ("gl", 2, 5, 5)])
def test_c9_linear_groups(family, n, q, p):
    r = check_group(GroupSpec.named(family, n, q), p)
    record(f"C9 {family.upper()}({n},{q}) at p={p} has a bijection", r.verdict == "bijection",
           f"|G|={r.group_order}, {r.route}, {r.verdict}")


# -- criterion 10 --------------------------------------------------------------

def _reports() -> str:
    c2 = check_group(GroupSpec.named("symmetric", 25), 5).to_json(timing=False)
    c3 = json.dumps(symmetric_table(PRIMES, 19).to_dict(timing=False))
    return "\n".join([_small_example_json(), c2, c3])


def test_c10_determinism():
    first, second = _reports(), _reports()
    record("C10 repeated runs give identical JSON", first == second, f"{len(first)} bytes")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

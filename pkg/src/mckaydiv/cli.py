"""Command line entry point: ``mckaydiv {check,table,batch,degrees}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ._nt import prime_factors
from .checker import EntryResult, batch, check_group, degrees_command, summarize, symmetric_table
from .corpus import CorpusError, bundled_path, find_entry, parse_family, read_corpus
from .permcore import DEFAULT_CAP, GroupSpec, PermutationError, generate_elements
from .structure import derived_series_solvable

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_group(text: str) -> GroupSpec:
    """``symmetric:7``, ``gl:2,3``, ``dihedral(4)`` or ``file:PATH:ID``."""
    if text.startswith("file:"):
        try:
            path, entry_id = text[5:].rsplit(":", 1)
        except ValueError:
            raise UsageError("file groups are written file:PATH:ID") from None
        return find_entry(path, entry_id).spec()
    name, params = parse_family(text)
    return GroupSpec.named(name, *params)


def _primes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad prime list {text!r}") from None


def _covered(spec: GroupSpec, p: int, order: int | None, cap: int) -> bool:
    """Whether a missing bijection would contradict one of the conjectures."""
    if spec.family == "symmetric":
        ps = prime_factors(spec.params[0]) if spec.params[0] > 1 else []
        if ps == [p]:
            return True
    if order is not None and order <= min(cap, 100_000):
        return derived_series_solvable(generate_elements(spec, cap))[0]
    return False


def cmd_check(args) -> int:
    spec = parse_group(args.group)
    rep = check_group(spec, args.prime, args.cap, generic=args.generic)
    if args.json:
        print(rep.to_json(timing=not args.no_timing))
    else:
        print(f"{rep.group_id}  |G| = {rep.group_order}  p = {rep.prime}  route = {rep.route}")
        print(f"A = {rep.a_degrees}")
        print(f"B = {rep.b_degrees}")
        print(f"verdict: {rep.verdict}")
        if rep.bijection is not None:
            print("pairs: " + ", ".join(f"{a}->{b}" for a, b in rep.bijection))
        if rep.violator is not None:
            print(f"Hall violator (A-side): {rep.violator}")
    if rep.verdict == "count_mismatch":
        return EXIT_COUNTEREXAMPLE
    if rep.verdict == "no_bijection" and _covered(spec, args.prime, rep.group_order, args.cap):
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def cmd_degrees(args) -> int:
    spec = parse_group(args.group)
    route, a, b = degrees_command(spec, args.prime, args.cap, generic=args.generic)
    if args.json:
        print(json.dumps({"group_id": spec.id, "prime": args.prime, "route": route,
                          "a_degrees": [str(x) for x in a], "b_degrees": None if b is None else [str(x) for x in b]}))
    else:
        print(f"route: {route}")
        print(f"A ({len(a)}): {a}")
        print(f"B ({'-' if b is None else len(b)}): {b if b is not None else 'out of scale'}")
    return EXIT_OK


def cmd_table(args) -> int:
    tab = symmetric_table(_primes(args.primes), args.max_n, args.cap)
    if args.json:
        print(json.dumps(tab.to_dict(timing=not args.no_timing)))
    else:
        print(tab.render())
    bad = [c for row in tab.cells for c in row
           if c.report.verdict == "count_mismatch" or (c.kind == "diagonal" and c.report.verdict == "no_bijection")]
    return EXIT_COUNTEREXAMPLE if bad else EXIT_OK


def _emit(res: EntryResult, args) -> None:
    if res.error:
        print(json.dumps({"entry": res.entry_id, "error": res.error}))
        return
    for rep in res.reports:
        print(rep.to_json(timing=not args.no_timing))


def cmd_batch(args) -> int:
    path = Path(args.corpus)
    if not path.exists():
        path = bundled_path(args.corpus)
    if not path.exists():
        raise UsageError(f"no corpus file {args.corpus}")
    primes = "all" if args.primes == "all" else _primes(args.primes)
    results = []
    for res in batch(read_corpus(path.read_text().splitlines()), primes, args.cap, args.jobs):
        _emit(res, args)
        results.append(res)
    summary = summarize(results)
    print(json.dumps({"summary": summary.to_dict()}))
    return summary.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mckaydiv", description="Divisibility bijections between p'-degree lists of G and N_G(P).")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, json_flag=True):
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap (elements)")
        if json_flag:
            p.add_argument("--json", action="store_true")
            p.add_argument("--no-timing", action="store_true", help="emit elapsed_ms as null")

    p = sub.add_parser("check", help="check one group at one prime")
    p.add_argument("--group", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--generic", action="store_true", help="prefer enumeration over closed forms")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("degrees", help="print the lists A and B")
    p.add_argument("--group", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--generic", action="store_true")
    common(p)
    p.set_defaults(func=cmd_degrees)

    p = sub.add_parser("table", help="symmetric groups S_q against primes p")
    p.add_argument("--primes", default="2,3,5,7,11,13,17,19")
    p.add_argument("--max-n", type=int, default=19)
    common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("batch", help="sweep a corpus file")
    p.add_argument("--corpus", required=True, help="path, or the name of a bundled corpus")
    p.add_argument("--primes", default="all")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(func=cmd_batch)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, CorpusError, PermutationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

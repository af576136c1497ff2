"""Line-oriented group corpus: one JSON object per line.

Fields, always written in this order::

    {"id": "S3xC2", "generators": ["(1,2)", "(1,2,3)", "(4,5)"], "order": "12", "solvable": true}
    {"id": "S7", "family": "symmetric(7)", "order": "5040", "solvable": false}

``order`` is a decimal string so arbitrarily large orders survive any JSON
reader; ``order`` and ``solvable`` are optional.  Running this module
rewrites the bundled corpus files under ``mckaydiv/data``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

from ._nt import is_prime, prime_factors
from .permcore import GroupSpec, PermutationError, family_generators, family_order, format_cycles, Permutation

FIELDS = ("id", "generators", "family", "order", "solvable")
BUNDLED = ("solvable.jsonl", "nonsolvable.jsonl")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    generators: tuple[str, ...] | None = None
    family: str | None = None
    order: int | None = None
    solvable: bool | None = None

    def to_line(self) -> str:
        rec: dict = {"id": self.id}
        if self.generators is not None:
            rec["generators"] = list(self.generators)
        else:
            rec["family"] = self.family
        if self.order is not None:
            rec["order"] = str(self.order)
        if self.solvable is not None:
            rec["solvable"] = self.solvable
        return json.dumps(rec, separators=(", ", ": "))

    def spec(self) -> GroupSpec:
        if self.family is not None:
            name, params = parse_family(self.family)
            return GroupSpec.named(name, *params, id=self.id)
        return GroupSpec.from_cycles(self.id, self.generators or ())


_FAMILY_RE = re.compile(r"^\s*([a-z]+)\s*[(:]\s*([\d,\s]+?)\s*\)?\s*$")


def parse_family(text: str) -> tuple[str, tuple[int, ...]]:
    """``"gl(2,3)"`` or ``"gl:2,3"`` -> ``("gl", (2, 3))``."""
    m = _FAMILY_RE.match(text)
    if not m:
        raise CorpusError(f"bad family expression {text!r}")
    return m.group(1), tuple(int(x) for x in m.group(2).split(",") if x.strip())


def parse_line(line: str) -> CorpusEntry:
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"not a JSON record: {exc}") from None
    if not isinstance(rec, dict):
        raise CorpusError("record must be a JSON object")
    keys = list(rec)
    unknown = [k for k in keys if k not in FIELDS]
    if unknown:
        raise CorpusError(f"unknown fields {unknown}")
    if keys != sorted(keys, key=FIELDS.index):
        raise CorpusError(f"fields out of order: {keys}")
    if "id" not in rec or not isinstance(rec["id"], str):
        raise CorpusError("missing string id")
    if ("generators" in rec) == ("family" in rec):
        raise CorpusError(f"{rec['id']}: exactly one of generators/family required")
    gens = rec.get("generators")
    if gens is not None and (not isinstance(gens, list) or not gens or not all(isinstance(g, str) for g in gens)):
        raise CorpusError(f"{rec['id']}: generators must be a nonempty list of cycle strings")
    order = rec.get("order")
    if order is not None:
        if not (isinstance(order, str) and order.isdigit()):
            raise CorpusError(f"{rec['id']}: order must be a decimal string")
        order = int(order)
    solvable = rec.get("solvable")
    if solvable is not None and not isinstance(solvable, bool):
        raise CorpusError(f"{rec['id']}: solvable must be a boolean")
    entry = CorpusEntry(rec["id"], tuple(gens) if gens is not None else None, rec.get("family"), order, solvable)
    try:
        entry.spec()
    except (PermutationError, ValueError) as exc:
        raise CorpusError(f"{rec['id']}: {exc}") from None
    return entry


def read_corpus(lines: Iterable[str]) -> Iterator[CorpusEntry | CorpusError]:
    """Entries in file order; a bad line yields its error instead of raising."""
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            yield parse_line(line)
        except CorpusError as exc:
            yield CorpusError(f"line {lineno}: {exc}")


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("mckaydiv") / "data" / name))


def load_bundled(name: str = "solvable.jsonl") -> list[CorpusEntry]:
    out = []
    for e in read_corpus(bundled_path(name).read_text().splitlines()):
        if isinstance(e, CorpusError):
            raise e
        out.append(e)
    return out


def find_entry(path: str | Path, entry_id: str) -> CorpusEntry:
    for e in read_corpus(Path(path).read_text().splitlines()):
        if isinstance(e, CorpusEntry) and e.id == entry_id:
            return e
    raise CorpusError(f"no entry {entry_id!r} in {path}")


# -- bundled corpus ----------------------------------------------------------

@dataclass(frozen=True)
class _Factor:
    name: str
    gens: tuple[tuple[int, ...], ...]  # 0-based image tuples on 0..deg-1
    order: int
    solvable: bool

    @property
    def degree(self) -> int:
        return len(self.gens[0])


def _family(name: str, *params: int, solvable: bool, label: str) -> _Factor:
    return _Factor(label, tuple(family_generators(name, params)), family_order(name, params), solvable)


def _agl1(p: int) -> _Factor:
    shift = tuple((x + 1) % p for x in range(p))
    gens = [shift]
    if p > 2:
        g = next(r for r in range(2, p) if all(pow(r, (p - 1) // s, p) != 1 for s in prime_factors(p - 1)))
        gens.append(tuple(g * x % p for x in range(p)))
    return _Factor(f"AGL(1,{p})", tuple(gens), p * (p - 1), True)


def _direct(*fs: _Factor) -> _Factor:
    gens = []
    offset = 0
    total = sum(f.degree for f in fs)
    for f in fs:
        for g in f.gens:
            img = list(range(total))
            for i, j in enumerate(g):
                img[offset + i] = offset + j
            gens.append(tuple(img))
        offset += f.degree
    name = "x".join(f.name for f in fs)
    return _Factor(name, tuple(gens), math.prod(f.order for f in fs), all(f.solvable for f in fs))


def _entry(f: _Factor) -> CorpusEntry:
    gens = []
    for g in f.gens:
        s = format_cycles(Permutation._raw(g))
        if s != "()" and s not in gens:
            gens.append(s)
    if not gens:
        gens = ["()"]
    return CorpusEntry(f.name, tuple(gens), None, f.order, f.solvable)


def bundled_factors() -> list[_Factor]:
    C = {n: _family("cyclic", n, solvable=True, label=f"C{n}") for n in range(1, 65)}
    D = {m: _family("dihedral", m, solvable=True, label=f"D{2 * m}") for m in range(3, 65)}
    S = {n: _family("symmetric", n, solvable=n <= 4, label=f"S{n}") for n in range(2, 8)}
    A = {n: _family("alternating", n, solvable=n <= 4, label=f"A{n}") for n in range(3, 8)}
    AGL = {p: _agl1(p) for p in range(2, 14) if is_prime(p)}
    lin = []
    for q in (2, 3, 4, 5):
        lin.append(_family("gl", 2, q, solvable=q <= 3, label=f"GL(2,{q})"))
        lin.append(_family("sl", 2, q, solvable=q <= 3, label=f"SL(2,{q})"))

    def power(f, k):
        g = _direct(*([f] * k))
        return _Factor(f"{f.name}^{k}", g.gens, g.order, g.solvable)

    elementary = [power(C[2], k) for k in range(2, 7)] + [power(C[3], k) for k in range(2, 5)]
    elementary += [power(C[p], 2) for p in (5, 7, 11, 13)] + [power(C[5], 3)]
    products = [
        _direct(C[2], S[3]), _direct(S[3], S[3]), _direct(S[3], S[4]), _direct(S[4], S[4]),
        _direct(D[4], D[4]), _direct(C[3], A[4]), _direct(A[4], A[4]), _direct(S[4], C[2]),
        _direct(C[2], S[3], S[3]), _direct(S[3], S[3], S[3]), _direct(C[4], C[4], C[2]),
        _direct(D[4], D[4], C[2]), _direct(D[8], S[4]), _direct(S[4], D[5]), _direct(AGL[5], S[3]),
        _direct(AGL[7], C[2]), _direct(AGL[13], S[3]), _direct(lin[2], S[3]), _direct(lin[3], C[3]),
        _direct(lin[2], S[4]), _direct(S[4], S[4], C[2]), _direct(S[4], S[3], S[3]), _direct(A[4], S[4], C[2]),
        _direct(D[6], AGL[7]), _direct(C[64], C[2]), _direct(C[9], C[3]),
        _direct(A[5], C[2]), _direct(S[5], C[2]), _direct(A[5], A[4]), _direct(A[5], S[3]), _direct(lin[6], C[2]),
    ]
    out = list(C.values()) + list(D.values()) + list(S.values()) + list(A.values())
    out += list(AGL.values()) + lin + elementary + products
    assert all(f.order <= 2000 for f in products + elementary)
    return out


def write_bundled(directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    factors = bundled_factors()
    for name, keep in zip(BUNDLED, (True, False)):
        lines = [_entry(f).to_line() for f in factors if f.solvable == keep]
        (directory / name).write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    write_bundled(Path(__file__).parent / "data")

import json

import pytest

from mckaydiv.checker import (
    CheckReport,
    ReportInvariantError,
    batch,
    check_group,
    degrees_command,
    run_entry,
    summarize,
    symmetric_table,
)
from mckaydiv.cli import main
from mckaydiv.corpus import CorpusEntry, CorpusError, load_bundled, parse_family, parse_line, read_corpus
from mckaydiv.permcore import GroupSpec, generate_elements
from mckaydiv.structure import derived_series_solvable

S = lambda n: GroupSpec.named("symmetric", n)


def test_s7_p3_has_no_bijection():
    r = check_group(S(7), 3)
    assert r.verdict == "no_bijection" and r.route == "symfast"
    assert sorted(r.violator) == [14, 14, 14, 14, 35, 35]


def test_trivial_route():
    r = check_group(S(3), 5)
    assert r.route == "trivial" and r.verdict == "bijection"
    assert r.a_degrees == r.b_degrees == [1, 1, 2]
    assert r.bijection == [(1, 1), (1, 1), (2, 2)]


def test_s5_p5_symfast():
    r = check_group(S(5), 5)
    assert r.route == "symfast" and r.verdict == "bijection"
    assert r.a_degrees == [1, 1, 4, 4, 6]
    assert r.b_degrees == [1, 1, 1, 1, 4]


def test_gl23_p3_generic():
    r = check_group(GroupSpec.named("gl", 2, 3), 3)
    assert r.route == "generic" and r.verdict == "bijection"


def test_out_of_scale():
    r = check_group(S(11), 2)
    assert r.verdict == "out_of_scale" and r.route is None
    assert r.group_order == 39916800
    big = GroupSpec.from_cycles("S8", ["(1,2)", "(1,2,3,4,5,6,7,8)"])
    r = check_group(big, 2, cap=1000)
    assert r.verdict == "out_of_scale" and r.group_order is None


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        check_group(S(4), 6)


def test_degrees_command():
    route, a, b = degrees_command(S(25), 5)
    assert len(a) == 25 and b is None
    assert degrees_command(S(5), 5)[1] == [1, 1, 4, 4, 6]
    route, a, b = degrees_command(GroupSpec.named("cyclic", 6), 2)
    assert route == "generic" and a == b == [1] * 6


@pytest.mark.parametrize("n, p", [(5, 3), (5, 5), (6, 3), (6, 5), (7, 3), (7, 5), (7, 7)])
def test_route_consistency(n, p):
    fast = check_group(S(n), p)
    slow = check_group(S(n), p, generic=True)
    assert (fast.route, slow.route) == ("symfast", "generic")
    assert fast.a_degrees == slow.a_degrees and fast.b_degrees == slow.b_degrees
    assert fast.verdict == slow.verdict


def test_reports_are_deterministic():
    a = check_group(GroupSpec.named("gl", 2, 4), 2).to_json(timing=False)
    b = check_group(GroupSpec.named("gl", 2, 4), 2).to_json(timing=False)
    assert a == b


def test_json_shape():
    d = json.loads(check_group(S(5), 5).to_json())
    assert list(d) == ["group_id", "group_order", "prime", "route", "a_degrees", "b_degrees",
                       "verdict", "bijection", "violator", "elapsed_ms"]
    assert d["group_order"] == "120" and all(isinstance(x, str) for x in d["a_degrees"])
    assert "total" in d["elapsed_ms"]


def test_validate_catches_tampering():
    r = check_group(S(5), 5)
    r.bijection = [(6, 4)] + r.bijection[1:]
    with pytest.raises(ReportInvariantError):
        r.validate()
    bad = CheckReport("x", 6, 2, "generic", [2, 2], [1, 3], "no_bijection", violator=[2])
    with pytest.raises(ReportInvariantError):
        bad.validate()


def test_small_table_shape():
    t = symmetric_table([2, 3, 5], 5)
    assert t.columns == [2, 3, 5]
    kinds = [[c.kind for c in row] for row in t.cells]
    assert kinds == [["diagonal", "checked", "checked"], ["trivial", "diagonal", "checked"], ["trivial", "trivial", "diagonal"]]
    with pytest.raises(ValueError):
        symmetric_table([3, 2], 5)


# -- corpus and batch ---------------------------------------------------------

def test_parse_family():
    assert parse_family("gl(2,3)") == ("gl", (2, 3))
    assert parse_family("symmetric:7") == ("symmetric", (7,))
    with pytest.raises(CorpusError):
        parse_family("gl[2]")


def test_corpus_line_roundtrip():
    e = CorpusEntry("S3xC2", ("(1,2)", "(1,2,3)", "(4,5)"), None, 12, True)
    assert parse_line(e.to_line()) == e
    f = CorpusEntry("S7", None, "symmetric(7)", 5040, False)
    assert parse_line(f.to_line()) == f


@pytest.mark.parametrize(
    "line",
    [
        "not json",
        '{"generators": ["(1,2)"]}',
        '{"id": "x"}',
        '{"id": "x", "generators": ["(1,2)"], "family": "cyclic(2)"}',
        '{"id": "x", "order": "2", "generators": ["(1,2)"]}',
        '{"id": "x", "generators": ["(1,2)"], "order": 2}',
        '{"id": "x", "generators": ["(1,2)(1,3)"]}',
        '{"id": "x", "generators": ["(1,2)"], "colour": "red"}',
        '{"id": "x", "family": "klein(4)"}',
    ],
)
def test_corpus_rejects(line):
    with pytest.raises(CorpusError):
        parse_line(line)


def test_batch_skips_bad_entries():
    lines = [
        '{"id": "C6", "generators": ["(1,2,3,4,5,6)"], "order": "6", "solvable": true}',
        "garbage",
        '{"id": "liar", "generators": ["(1,2,3)"], "order": "4", "solvable": true}',
        '{"id": "S3", "family": "symmetric(3)", "order": "6", "solvable": true}',
    ]
    results = list(batch(read_corpus(lines)))
    assert [r.entry_id for r in results] == ["C6", "?", "liar", "S3"]
    assert results[1].error and results[2].error and "declared order" in results[2].error
    assert [rep.prime for rep in results[0].reports] == [2, 3]
    s = summarize(results)
    assert s.errors == 2 and s.verdicts["bijection"] == 4 and s.exit_code == 2


def test_batch_empty():
    s = summarize(batch([]))
    assert s.entries == 0 and s.exit_code == 0


def test_batch_flags_solvable_counterexample_only():
    # S7 at p=3 fails; it is not solvable, so no counterexample is recorded
    res = run_entry(CorpusEntry("S7", None, "symmetric(7)", 5040, False), primes=[3])
    s = summarize([res])
    assert s.verdicts["no_bijection"] == 1 and s.exit_code == 0
    res.solvable = True
    assert summarize([res]).exit_code == 1


def test_batch_parallel_matches_serial():
    entries = load_bundled("solvable.jsonl")[:12]
    serial = [[r.to_json(False) for r in e.reports] for e in batch(entries)]
    parallel = [[r.to_json(False) for r in e.reports] for e in batch(entries, jobs=2)]
    assert serial == parallel


def test_bundled_corpus_metadata():
    for name in ("solvable.jsonl", "nonsolvable.jsonl"):
        for e in load_bundled(name):
            table = generate_elements(e.spec())
            assert table.order == e.order, e.id
            if table.order <= 2000:
                assert derived_series_solvable(table)[0] == e.solvable, e.id


# -- command line ---------------------------------------------------------------

def test_cli_check_json(capsys):
    assert main(["check", "--group", "symmetric:5", "--prime", "5", "--json", "--no-timing"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["verdict"] == "bijection" and d["elapsed_ms"] is None


def test_cli_degrees(capsys):
    assert main(["degrees", "--group", "symmetric(25)", "--prime", "5", "--json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["a_degrees"]) == 25


def test_cli_usage_errors(capsys):
    assert main(["check", "--group", "nonsense", "--prime", "5"]) == 2
    assert main(["check", "--group", "symmetric:5", "--prime", "4"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["batch", "--corpus", "/no/such/file.jsonl"]) == 2


def test_cli_file_group(tmp_path, capsys):
    f = tmp_path / "c.jsonl"
    f.write_text('{"id": "A4", "generators": ["(1,2,3)", "(1,2)(3,4)"], "order": "12", "solvable": true}\n')
    assert main(["check", "--group", f"file:{f}:A4", "--prime", "2", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "bijection"


def test_cli_batch_exit_codes(tmp_path, capsys):
    f = tmp_path / "c.jsonl"
    f.write_text('{"id": "S7", "family": "symmetric(7)", "solvable": false}\n')
    assert main(["batch", "--corpus", str(f), "--primes", "3", "--no-timing"]) == 0
    f.write_text('{"id": "S7", "family": "symmetric(7)", "solvable": true}\n')
    assert main(["batch", "--corpus", str(f), "--primes", "3"]) == 2  # flag contradicts derived series
    out = capsys.readouterr().out.strip().splitlines()
    assert json.loads(out[-1])["summary"]["errors"] == 1


def test_cli_table(capsys):
    assert main(["table", "--primes", "2,3,5", "--max-n", "5"]) == 0
    assert "S_5" in capsys.readouterr().out

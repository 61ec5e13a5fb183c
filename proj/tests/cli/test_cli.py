import csv
import io
import os
import subprocess
from pathlib import Path

import pytest

BIN = os.environ["TERMWEAVE_BIN"]
DATA = Path(os.environ["TERMWEAVE_DATA"])


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("TERMWEAVE_SEED", None)
    full_env.update(env or {})
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=full_env, timeout=300)


def test_match_prints_substitution():
    r = run("match", "--pattern", "f(x_)", "--subject", "f(a)")
    assert r.returncode == 0
    assert r.stdout == "{x -> a}\n"


def test_match_with_signature_file_and_all():
    r = run("match", "--signatures", str(DATA / "intro.sig"), "--pattern", "fc(x___, y__, y__)",
            "--subject", "fc(a, b, b, b)", "--all")
    assert r.returncode == 0
    assert r.stdout == "{x -> (a, b), y -> (b)}\n"
    r = run("match", "--signatures", str(DATA / "intro.sig"), "--pattern", "Plus(x_, x_)",
            "--subject", "Plus(a, a)", "--all", "--engine", "net")
    assert r.stdout == "{x -> a}\n"


def test_match_all_is_sorted_and_engines_agree():
    outs = [run("match", "--pattern", "[___, x_, ___]", "--subject", "[3, 1, 2]", "--all", "--engine", e).stdout
            for e in ("one2one", "net")]
    assert outs[0] == "{x -> 1}\n{x -> 2}\n{x -> 3}\n"
    assert outs[0] == outs[1]
    assert run("match", "--pattern", "[___, x_, ___]", "--subject", "[3, 1, 2]").stdout == "{x -> 1}\n"


def test_match_exit_codes():
    r = run("match", "--pattern", "f(x_)", "--subject", "g(a)")
    assert (r.returncode, r.stdout) == (1, "")
    assert run("match", "--pattern", "f(x_)", "--subject", "f(a").returncode == 2
    assert run("match", "--pattern", "f(x_)").returncode == 2
    assert run("match", "--signatures", "/nonexistent", "--pattern", "f(x_)", "--subject", "f(a)").returncode == 2
    assert run("frobnicate").returncode == 2
    assert run("--help").returncode == 0


def test_rewrite_bubble_sort_with_trace():
    r = run("rewrite", "--rules", str(DATA / "bubble.rules"), "--subject", "[1, 4, 3, 2]", "--trace")
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert lines[-1] == "[1, 2, 3, 4]"
    assert len(lines) == 4
    assert all(line.startswith("pos=/ rule=0 sigma={") for line in lines[:-1])


def test_rewrite_normal_subject_and_limit():
    r = run("rewrite", "--rules", str(DATA / "bubble.rules"), "--subject", "[1, 2]")
    assert (r.returncode, r.stdout) == (0, "[1, 2]\n")
    r = run("rewrite", "--rules", str(DATA / "bubble.rules"), "--subject", "[3, 1, 2]", "--max-steps", "1")
    assert r.returncode == 3
    assert r.stdout == "[1, 3, 2]\n"
    assert "step limit" in r.stderr


def test_rewrite_prop_files_with_both_engines():
    for engine in ("one2one", "net"):
        r = run("rewrite", "--signatures", str(DATA / "prop.sig"), "--rules", str(DATA / "prop.rules"),
                "--subject", "Implies(And(a, b), Or(a, c))", "--engine", engine)
        assert (r.returncode, r.stdout) == (0, "T\n")
        r = run("rewrite", "--signatures", str(DATA / "prop.sig"), "--rules", str(DATA / "prop.rules"),
                "--subject", "Or(a, b)", "--engine", engine)
        assert r.stdout == "Xor(a, b, And(a, b))\n"


def test_rewrite_bad_rules_file(tmp_path):
    bad = tmp_path / "bad.rules"
    bad.write_text("[x_] -> [y_]\n")
    assert run("rewrite", "--rules", str(bad), "--subject", "[1]").returncode == 2


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_bench_prop_rows_and_determinism():
    r = run("bench", "--workload", "prop", "--size", "6", "--seed", "4", "--repetitions", "1")
    assert r.returncode == 0
    rows = read_csv(r.stdout)
    assert list(rows[0]) == ["workload", "engine", "subjects", "patterns", "wall_ms", "comparisons", "matches"]
    assert len(rows) == 18
    steps = {}
    for row in rows:
        steps.setdefault(row["engine"], []).append(row["matches"])
    assert steps["one2one"] == steps["net"] == steps["codegen"]

    def strip(rows):
        return [{k: v for k, v in row.items() if k != "wall_ms"} for row in rows]

    again = run("bench", "--workload", "prop", "--size", "6", "--repetitions", "1", env={"TERMWEAVE_SEED": "4"})
    assert strip(read_csv(again.stdout)) == strip(rows)


def test_bench_overlap_to_file(tmp_path):
    out = tmp_path / "o.csv"
    r = run("bench", "--workload", "overlap", "--size", "10", "--seed", "1", "--engines", "one2one,net",
            "--out", str(out), "--repetitions", "1")
    assert r.returncode == 0
    rows = read_csv(out.read_text())
    assert len(rows) == 20
    assert {row["patterns"] for row in rows} == {"200"}
    one = sum(int(row["comparisons"]) for row in rows if row["engine"] == "one2one")
    net = sum(int(row["comparisons"]) for row in rows if row["engine"] == "net")
    assert net < one


def test_bench_errors():
    assert run("bench", "--workload", "nope").returncode == 2
    assert run("bench", "--workload", "prop", "--engines", "warp").returncode == 2
    assert run("bench", "--workload", "prop", "--size", "1", env={"TERMWEAVE_SEED": "x"}).returncode == 2


def test_codegen_lists(tmp_path):
    out = tmp_path / "gen"
    r = run("codegen", "--patterns", str(DATA / "lists.patterns"), "--out", str(out), "--name", "lists")
    assert r.returncode == 0
    assert r.stdout == "states 9 patterns 3\n"
    assert (out / "manifest.tsv").read_text() == "0\t[1]\n1\t[y_, 0]\n2\t[1, x___]\n"
    source = (out / "lists.cpp").read_bytes()
    assert b"termweave_generated_lists" in source
    again = tmp_path / "again"
    run("codegen", "--patterns", str(DATA / "lists.patterns"), "--out", str(again), "--name", "lists")
    assert (again / "lists.cpp").read_bytes() == source


def test_codegen_empty_and_errors(tmp_path):
    r = run("codegen", "--patterns", str(DATA / "empty.patterns"), "--out", str(tmp_path / "e"))
    assert (r.returncode, r.stdout) == (0, "states 1 patterns 0\n")
    assert (tmp_path / "e" / "manifest.tsv").read_text() == ""
    blocker = tmp_path / "file"
    blocker.write_text("")
    r = run("codegen", "--patterns", str(DATA / "lists.patterns"), "--out", str(blocker / "sub"))
    assert r.returncode == 2
    assert run("codegen", "--patterns", str(DATA / "lists.patterns"), "--out", str(tmp_path / "n"),
               "--name", "not-an-identifier").returncode == 2

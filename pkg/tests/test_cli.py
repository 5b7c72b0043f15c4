import csv
import io
import json
import subprocess
import sys

import pytest

from happycolor.cli import BENCH_COLUMNS, main
from happycolor.instances import parse_instance

PATH2 = "p happy 3 2 2\nv 1 1\nv 3 2\ne 1 2\ne 2 3\n"
PATH3 = "p happy 3 2 3\nv 1 1\nv 3 2\ne 1 2\ne 2 3\n"
STAR_MWC = "p mwc 4 3 3\nt 2\nt 3\nt 4\ne 1 2\ne 1 3\ne 1 4\n"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in [("path2", PATH2), ("path3", PATH3), ("star", STAR_MWC)]:
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_solve_greedy(files, capsys):
    code, out, _ = run(capsys, "solve", "--problem", "mhv", "--algo", "greedy", files["path2"])
    assert code == 0 and "objective 1" in out.splitlines()


def test_solve_emits_coloring_and_counters(files, capsys):
    code, out, _ = run(capsys, "solve", "--problem", "mhv", "--algo", "growth", "--emit-coloring",
                       files["path2"])
    assert code == 0
    assert "coloring 1 1 2" in out and "counter H_new 1" in out and "counter Lu_new 0" in out


def test_solve_mode_override(files, capsys):
    code, out, _ = run(capsys, "solve", "--problem", "mhv", "--algo", "brute", "--mode", "hard", "1",
                       files["path2"])
    assert code == 0 and "objective 2" in out and "mode hard 1" in out


def test_solve_division_counters(files, capsys):
    code, out, _ = run(capsys, "solve", "--problem", "mhe", "--algo", "division", files["path3"])
    assert code == 0 and "counter W1 1" in out and "counter bound 1" in out


def test_exact2_needs_two_colors(files, capsys):
    code, _, err = run(capsys, "solve", "--problem", "mhe", "--algo", "exact2", files["path3"])
    assert code == 1 and "exact2 requires k=2" in err


def test_brute_budget_refusal(files, capsys):
    code, _, err = run(capsys, "solve", "--problem", "mhv", "--algo", "brute", "--budget", "1",
                       files["path3"])
    assert code == 2 and "needs 3 enumerations" in err


def test_hard_threshold_refusal(files, capsys):
    code, _, err = run(capsys, "solve", "--problem", "mhv", "--algo", "growth", "--mode", "hard", "5",
                       files["path2"])
    assert code == 2 and "exceeds the maximum degree" in err


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("p happy 2 1 2\ne 1 1\n")
    code, _, err = run(capsys, "solve", "--problem", "mhv", "--algo", "greedy", str(bad))
    assert code == 1 and "self-loop at line 2" in err


def test_best_reports_max(files, capsys):
    code, out, _ = run(capsys, "solve", "--problem", "mhv", "--algo", "best", files["path2"])
    assert code == 0 and "objective 1" in out and "best(" in out


def test_verify_exact(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "exact", "--n", "10", "--trials", "50")
    assert code == 0 and "fail 0" in out and "all properties hold" in out


def test_verify_lemmas_vacuous_on_small_degree(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemmas", "--n", "2", "--trials", "10")
    assert code == 0 and "vacuous-skip 10" in out


def test_verify_reductions(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "reductions", "--n", "6", "--trials", "5")
    assert code == 0 and "fail 0" in out


def test_verify_failure_serializes_counterexample(monkeypatch, tmp_path, capsys):
    from happycolor import audit

    def failing(**kw):
        rep = audit.SuiteReport("fake")
        rep.record("always", False, "forced", PATH2)
        return rep

    monkeypatch.setitem(audit.SUITES, "ratios", failing)
    cex = tmp_path / "cex.txt"
    code, out, _ = run(capsys, "verify", "--suite", "ratios", "--counterexample", str(cex))
    assert code == 3 and "p happy 3 2 2" in out
    assert parse_instance(cex.read_text())[0].m == 2


def test_reduce_mwc(files, tmp_path, capsys):
    target = tmp_path / "t.txt"
    code, out, _ = run(capsys, "reduce", "--from", "mwc3", "--to", "mhe3", "--verify", "--out",
                       str(target), files["star"])
    assert code == 0 and "verdict holds" in out
    record = json.loads((tmp_path / "t.txt.json").read_text())
    assert record["value_map"] == {"type": "affine", "a": -1, "b": 3}
    g, spec, _ = parse_instance(target.read_text())
    assert spec.precolor == {2: 1, 3: 2, 4: 3}


def test_reduce_soft_sidecar(files, tmp_path, capsys):
    target = tmp_path / "s.txt"
    code, _, _ = run(capsys, "reduce", "--from", "mhe3", "--to", "soft", "--rho", "1/2", "--out",
                     str(target), files["path3"])
    record = json.loads((tmp_path / "s.txt.json").read_text())
    assert code == 0 and record["params"]["k"] == 5 and record["params"]["h"] == 1


@pytest.mark.parametrize("to, extra", [("mhek", ["--k", "4"]), ("mhv", []), ("hard", [])])
def test_reduce_verify_tiny(files, capsys, to, extra):
    code, out, _ = run(capsys, "reduce", "--from", "mhe3", "--to", to, *extra, "--verify", files["path3"])
    assert code == 0 and "verdict holds" in out


def test_reduce_contract_errors(files, capsys):
    assert run(capsys, "reduce", "--from", "mwc3", "--to", "mhv", files["star"])[0] == 1
    assert run(capsys, "reduce", "--from", "mhe3", "--to", "mhek", files["path3"])[0] == 1


def test_generate_deterministic(tmp_path, capsys):
    args = ["generate", "--gen", "planted", "--n", "20", "--k", "3", "--p", "0.4", "--p-out", "0.05",
            "--seed", "3"]
    run(capsys, *args, "-o", str(tmp_path / "a.txt"))
    run(capsys, *args, "-o", str(tmp_path / "b.txt"))
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()
    code, out, _ = run(capsys, "generate", "--gen", "mwc", "--n", "6", "--seed", "1")
    assert code == 0 and out.startswith("p mwc 6")


def bench(capsys, seed="1"):
    code, out, _ = run(capsys, "bench", "--algos", "greedy,growth", "--gen", "planted",
                       "--params", "n=12,k=3,p=0.5,p_out=0.05,reveal=0.3", "--trials", "4", "--seed", seed)
    assert code == 0
    return list(csv.DictReader(io.StringIO(out)))


def test_bench_schema_and_ratios(capsys):
    rows = bench(capsys)
    assert len(rows) == 8 and list(rows[0]) == BENCH_COLUMNS
    for r in rows:
        if r["bound_kind"] == "oracle":
            assert float(r["ratio"]) <= 1.0


def test_bench_deterministic_modulo_timing(capsys):
    strip = lambda rows: [{k: v for k, v in r.items() if k != "wall_millis"} for r in rows]
    assert strip(bench(capsys)) == strip(bench(capsys))


def test_bench_falls_back_to_proven_bounds(capsys):
    code, out, _ = run(capsys, "bench", "--problem", "mhe", "--algos", "division", "--params",
                       "n=40,k=3,p=0.1,reveal=0.2", "--trials", "2", "--budget", "10")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and {r["bound_kind"] for r in rows} == {"division-bound"}
    code, out, _ = run(capsys, "bench", "--algos", "growth", "--params", "n=40,k=3,p=0.1,reveal=0.2",
                       "--trials", "2", "--budget", "10")
    assert {r["bound_kind"] for r in csv.DictReader(io.StringIO(out))} <= {"growth-bound", "trivial"}


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "happycolor", "solve", "--problem", "mhe", "--algo",
                           "exact2", files["path2"]], capture_output=True, text=True)
    assert proc.returncode == 0 and "objective 1" in proc.stdout

import json
import subprocess
import sys

import pytest

from backjump.cli import main
from backjump.engines import STATS_KEYS
from backjump.problems import paper_problem, serialize_instance


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def stats_of(text):
    return dict(line.split("=", 1) for line in text.splitlines() if line.split("=", 1)[0] in STATS_KEYS)


def test_solve_chrono(capsys):
    code, out, _ = run(capsys, "solve", "--problem", "paper:16,8", "--strategy", "chrono")
    assert code == 0
    assert "trials=32936" in out.splitlines()
    assert out.splitlines()[0].startswith("16=")


def test_solve_alg2_json(capsys):
    code, out, _ = run(capsys, "solve", "--problem", "paper:16,8", "--strategy", "alg2",
                       "--stats", "json", "--quiet")
    rec = json.loads(out)
    assert code == 0
    assert list(rec) == list(STATS_KEYS)
    assert rec["trials"] == 4015


def test_solve_unsat(capsys):
    code, out, _ = run(capsys, "solve", "--problem", "queens:2", "--strategy", "alg2")
    assert code == 1
    assert "termination=Unsatisfiable" in out


def test_limit_exit_code(capsys):
    code, out, _ = run(capsys, "solve", "--problem", "paper:16,8", "--max-trials", "100")
    assert code == 3
    assert stats_of(out)["termination"] == "LimitReached"


@pytest.mark.parametrize(
    "argv",
    [
        ["solve"],
        ["solve", "--problem", "paper:16"],
        ["solve", "--problem", "queens:4", "--strategy", "dfs"],
        ["solve", "--problem", "queens:4", "--mode", "some"],
        ["solve", "--problem", "file:/nonexistent/x.csp"],
        ["frob"],
    ],
)
def test_usage_errors(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_trace_file(capsys, tmp_path):
    path = tmp_path / "t.txt"
    code, _, _ = run(capsys, "solve", "--problem", "queens:4", "--strategy", "alg2",
                     "--trace", str(path), "--quiet")
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "A 4 4" and lines[-1] == "S 3,1,4,2"


def test_compare_first(capsys):
    code, out, _ = run(capsys, "compare", "--problem", "paper:20,10", "--mode", "first", "--quiet")
    assert code == 0
    rows = {line.split()[0]: line.split() for line in out.splitlines()[1:4]}
    assert rows["chrono"][1] == "75950"
    assert rows["alg1"][1] == "15813"
    assert rows["alg2"][1] == "15813"
    assert "solutions: identical" in out


def test_compare_all_json(capsys):
    code, out, _ = run(capsys, "compare", "--problem", "queens:6", "--mode", "all",
                       "--stats", "json", "--quiet")
    first, verdict = out.splitlines()
    recs = json.loads(first)
    assert verdict == "solutions: identical"
    assert recs["alg2"]["trials"] <= recs["chrono"]["trials"]
    assert recs["chrono"]["solutions"] == 4


def test_compare_file_round_trip(capsys, tmp_path):
    path = tmp_path / "inst.csp"
    path.write_text(serialize_instance(paper_problem(6, 4)))
    _, direct, _ = run(capsys, "compare", "--problem", "paper:6,4", "--mode", "all")
    code, from_file, _ = run(capsys, "compare", "--problem", f"file:{path}", "--mode", "all")
    assert code == 0
    assert direct == from_file
    assert "solutions: identical" in from_file


def test_compare_trace_files(capsys, tmp_path):
    base = tmp_path / "tr"
    run(capsys, "compare", "--problem", "queens:5", "--trace", str(base), "--quiet")
    assert (tmp_path / "tr.alg1").read_text() == (tmp_path / "tr.alg2").read_text()
    assert (tmp_path / "tr.chrono").exists()


def test_bad_instance_file(capsys, tmp_path):
    path = tmp_path / "bad.csp"
    path.write_text("csp 2\norder 2 1\ndomain 2 1\ndomain 1 1\ncheck 2 1 neq\n")
    code, _, err = run(capsys, "solve", "--problem", f"file:{path}")
    assert code == 2
    assert "line 5" in err


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "backjump", "compare", "--problem", "paper:8,5", "--mode", "all"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == b.returncode
    assert a.stdout == b.stdout and a.stdout

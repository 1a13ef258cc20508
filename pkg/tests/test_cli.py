import json
import subprocess
import sys
from pathlib import Path

import pytest

from orderscope.cli import main

GOLDEN = Path(__file__).parent / "golden"
FIXTURES = [(5, 2), (-1, 3), (-1, 2), (2, 2)]


@pytest.fixture
def run(capsys, monkeypatch):
    # main() exports --caps into the environment; keep that local to the test
    monkeypatch.setenv("ORDERSCOPE_CAPS", "")

    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err
    return _run


@pytest.mark.parametrize("d, f", FIXTURES)
def test_analyze_matches_golden(run, d, f):
    code, out, _ = run("analyze", f"--d={d}", f"--f={f}", "--json", "--verify", "--norm-bound", 200)
    assert code == 0
    expected = json.loads((GOLDEN / f"analyze_d{d}f{f}.json").read_text())
    assert json.loads(out) == expected


def test_golden_content():
    g = json.loads((GOLDEN / "analyze_d-1f2.json").read_text())
    assert g["verdict"] == "not_transfer_krull"
    assert g["local"][0]["atom_valuations"] == [2, 3]
    assert g["oracle"]["t2"]["witness"]["u"] == "-2"
    g = json.loads((GOLDEN / "analyze_d5f2.json").read_text())
    assert g["transfer_krull"] and g["oracle"]["agrees"]


def test_json_output_is_deterministic(run):
    outs = {run("analyze", "--d=13", "--f=4", "--json")[1] for _ in range(3)}
    assert len(outs) == 1
    text = outs.pop()
    assert json.dumps(json.loads(text), sort_keys=True) == text.strip()


def test_text_output(run):
    code, out, _ = run("analyze", "--d=5", "--f=2")
    assert code == 0 and "transfer" in out.lower()
    code, out, _ = run("lengths", "--d=-1", "--f=2", "--element", "8")
    assert code == 0 and out.strip() == "L(8) = {2, 3}"


def test_zerosum_command(run):
    code, out, _ = run("zerosum", "--group", "3", "--sequence", "(1)x4 (2)x4", "--json")
    assert code == 0 and json.loads(out)["sequence"]["lengths"] == [3, 4]
    code, out, _ = run("zerosum", "--group", "2,2", "--davenport")
    assert code == 0 and "3" in out


def test_verify_t2_command(run):
    code, out, _ = run("verify-t2", "--d=5", "--f=4", "--norm-bound", 100, "--json")
    r = json.loads(out)
    assert code == 0 and not r["ok"] and r["witness"]["u"] == "-4*w"


@pytest.mark.parametrize("argv", [
    ("analyze", "--d=4", "--f=2"),
    ("analyze", "--d=5", "--f=1"),
    ("analyze", "--d=5", "--f=2", "--norm-bound", 1),
    ("lengths", "--d=-1", "--f=3", "--element", "w"),
    ("zerosum", "--group", "0"),
    ("sweep", "--d=a..b", "--f=2"),
])
def test_usage_errors_exit_64(run, argv):
    assert run(*argv)[0] == 64


def test_missing_argument_exits_64():
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--d=5"])
    assert exc.value.code == 64


def test_resource_limit_exits_2(run):
    code, _, err = run("--caps", "disc=3", "analyze", "--d=-89", "--f=2")
    assert code == 2 and "resource limit" in err


def test_sweep_parallel_matches_serial(run):
    args = ("sweep", "--d=-6,-5,-3,-2,-1,2,3,5,6,7,10,13", "--f=2..5", "--json")
    code, serial, _ = run(*args)
    assert code == 0
    code, parallel, _ = run(*args, "--jobs", 3)
    assert code == 0 and serial == parallel
    rows = [json.loads(line) for line in serial.splitlines()]
    assert len(rows) == 48
    true_cells = {(r["d"], r["f"]) for r in rows if r["transfer_krull"]}
    assert true_cells == {(-3, 2), (2, 3), (5, 2), (5, 3), (13, 2)}


def test_sweep_range_skips_non_squarefree(run):
    code, out, _ = run("sweep", "--d=-6..13", "--f=2", "--json")
    ds = [json.loads(line)["d"] for line in out.splitlines()]
    assert code == 0 and ds == [-6, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 11, 13]


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "orderscope", "analyze", "--d=5", "--f=2", "--json"],
                       capture_output=True, text=True, timeout=120)
    assert p.returncode == 0 and json.loads(p.stdout)["verdict"] == "transfer_krull"

import hashlib
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from chessboard_bisect.cli import EXIT_FAILURE, EXIT_INVARIANT, EXIT_OK, EXIT_USAGE, main
from chessboard_bisect.measures import WeightedCloud, save_instance

from conftest import gaussian_clouds, necklace_measures

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("d,k,m,expected", [(2, 2, 1, True), (1, 1, 0, True), (2, 3, 0, False)])
def test_certify(capsys, d, k, m, expected):
    code, out, _ = run(["certify", "--d", str(d), "--k", str(k), "--m", str(m)], capsys)
    assert code == EXIT_OK
    assert json.loads(out)["certified"] is expected


def test_certify_golden(capsys):
    _, out, _ = run(["certify", "--d", "2", "--k", "2", "--m", "1"], capsys)
    assert out == (GOLDEN / "certify_2_2_1.json").read_text()


def test_table_default_grid(capsys):
    code, out, err = run(["table", "--threads", "1"], capsys)
    assert code == EXIT_OK
    rows = out.strip().split("\n")
    assert rows[0] == "d,k,m,n,member,certified,stirling_parity,consistent"
    assert len(rows) == 97
    assert all(r.endswith(",1") for r in rows[1:])
    assert json.loads(err)["subcommand"] == "table"


def test_table_golden_and_sidecar(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code, _, _ = run(["table", "--d_max", "2", "--k_max", "3", "--m_max", "1",
                      "--threads", "1", "--out", str(out)], capsys)
    assert code == EXIT_OK
    assert out.read_text() == (GOLDEN / "table_2_3_1.csv").read_text()
    manifest = json.loads(Path(str(out) + ".manifest.json").read_text())
    assert manifest["flags"]["d_max"] == 2


def test_empty_table(capsys):
    code, out, _ = run(["table", "--d_max", "0"], capsys)
    assert code == EXIT_OK
    assert out == "d,k,m,n,member,certified,stirling_parity,consistent\n"


def test_bisect_necklace(tmp_path, capsys):
    inst = tmp_path / "necklace.json"
    save_instance(inst, necklace_measures())
    out = tmp_path / "res.json"
    code, _, _ = run(["bisect", str(inst), "--k", "2", "--threads", "1", "--out", str(out)], capsys)
    assert code == EXIT_OK
    obj = json.loads(out.read_text())
    assert len(obj["cuts"]) == 2 and obj["residual"] <= 1e-6
    assert obj["certificate"]["certified"] is True
    digest = hashlib.sha256(inst.read_bytes()).hexdigest()
    assert obj["manifest"]["inputs"] == {str(inst): digest}
    assert obj["manifest"]["seed"] == 0


def test_bisect_failure_exit_code(tmp_path, capsys):
    inst = tmp_path / "blobs.json"
    save_instance(inst, [WeightedCloud([[0.0]], [1.0], 0.05), WeightedCloud([[3.0]], [1.0], 0.05)])
    with pytest.warns(UserWarning):
        code, out, _ = run(["bisect", str(inst), "--k", "1", "--restarts", "2", "--threads", "1"], capsys)
    assert code == EXIT_FAILURE
    assert json.loads(out)["failure"]["best_residual"] > 0


def test_threads_from_environment(tmp_path, capsys, monkeypatch):
    inst = tmp_path / "i.json"
    save_instance(inst, gaussian_clouds(np.random.default_rng(0), 3, 2))
    monkeypatch.setenv("CHESSBOARD_BISECT_THREADS", "2")
    code, out, _ = run(["bisect", str(inst), "--k", "2"], capsys)
    assert code == EXIT_OK
    assert json.loads(out)["manifest"]["flags"]["threads"] == 2
    monkeypatch.setenv("CHESSBOARD_BISECT_THREADS", "many")
    code, _, err = run(["bisect", str(inst), "--k", "2"], capsys)
    assert code == EXIT_USAGE and "CHESSBOARD_BISECT_THREADS" in err


def test_assign_search(tmp_path, capsys):
    inst = tmp_path / "r3.json"
    save_instance(inst, gaussian_clouds(np.random.default_rng(8), 4, 3))
    code, out, _ = run(["assign-search", str(inst), "--d", "2", "--k", "2", "--seed", "1",
                        "--tol", "1e-5", "--threads", "1"], capsys)
    assert code == EXIT_OK
    obj = json.loads(out)
    assert np.allclose(np.array(obj["frame"]) @ np.array(obj["frame"]).T, np.eye(2), atol=1e-10)
    assert obj["residual"] <= 1e-5


def test_ring_info(capsys):
    code, out, _ = run(["ring-info", "--d", "2", "--m", "2"], capsys)
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["dimensions"] == [1, 1, 2, 1, 1]
    assert obj["relations"][0] == "w1 + wb1"


def test_selftest_clean(capsys):
    code, out, _ = run(["selftest", "--quick"], capsys)
    assert code == EXIT_OK
    assert all(line.startswith("PASS") for line in out.strip().split("\n"))


def test_selftest_fault_injection(capsys):
    code, out, err = run(["selftest", "--quick", "--inject-fault", "relation"], capsys)
    assert code == EXIT_INVARIANT
    assert "FAIL poincare_series" in out
    assert "poincare_series" in err


@pytest.mark.parametrize("argv", [
    [],
    ["certify", "--d", "0", "--k", "1"],
    ["certify", "--k", "1"],
    ["bisect", "missing.json", "--k", "2"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(argv, capsys)
    assert code == EXIT_USAGE


def test_malformed_instance(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"measures": []}')
    code, _, _ = run(["bisect", str(bad), "--k", "1"], capsys)
    assert code == EXIT_USAGE


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "chessboard_bisect", "certify", "--d", "1",
                           "--k", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["certified"] is True

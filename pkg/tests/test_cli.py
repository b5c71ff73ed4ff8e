import json
import subprocess
import sys

import numpy as np
import pytest

import palettecolor as pc
from palettecolor import cli


def run_cli(args):
    return cli.main([str(a) for a in args])


@pytest.fixture
def pauli_file(tmp_path):
    path = tmp_path / "h.pauli"
    run_cli(["generate", "random-pauli", "--n", 80, "--num-qubits", 5, "--seed", 1, "--out", path])
    return path


def test_generate_random_pauli_reproducible(tmp_path):
    p1, p2 = tmp_path / "a.pauli", tmp_path / "b.pauli"
    assert run_cli(["generate", "random-pauli", "--n", 50, "--num-qubits", 8, "--seed", 3, "--out", p1]) == 0
    assert run_cli(["generate", "random-pauli", "--n", 50, "--num-qubits", 8, "--seed", 3, "--out", p2]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    assert len(p1.read_text().splitlines()) == 50


def test_generate_gnp_complete(tmp_path):
    out = tmp_path / "k50.edges"
    assert run_cli(["generate", "gnp", "--n", 50, "--p", 1.0, "--seed", 0, "--out", out]) == 0
    g = pc.load_edge_list(out.read_text())
    assert g.n == 50 and g.m == 50 * 49 // 2


def test_color_end_to_end(tmp_path, pauli_file):
    out = tmp_path / "coloring.json"
    stats = tmp_path / "stats.json"
    code = run_cli([
        "color", "--input", pauli_file, "--palette-pct", 12.5, "--alpha", 2,
        "--seed", 7, "--out", out, "--stats-out", stats,
    ])
    assert code == 0
    coloring = json.loads(out.read_text())
    assert coloring["kind"] == "coloring" and coloring["n"] == 80
    assert len(coloring["colors"]) == 80
    payload = json.loads(stats.read_text())
    assert payload["algorithm"] == "palette"
    assert payload["totals"]["completed"] is True
    assert payload["totals"]["colors_used"] >= 1
    assert "timing" in payload
    # CLI output validates clean through the API
    ps = pc.parse_pauli_text(pauli_file.read_text())
    color = np.array([coloring["colors"][str(v)] for v in range(80)])
    assert not any(
        ps.complement_edge(u, v) and color[u] == color[v]
        for u in range(80)
        for v in range(u + 1, 80)
    )


def test_color_determinism_across_threads(tmp_path, pauli_file):
    outs = []
    for threads in (1, 2, 4):
        out = tmp_path / f"c{threads}.json"
        stats = tmp_path / f"s{threads}.json"
        code = run_cli([
            "color", "--input", pauli_file, "--seed", 5, "--threads", threads,
            "--out", out, "--stats-out", stats, "--no-timing",
        ])
        assert code == 0
        outs.append((out.read_bytes(), stats.read_bytes()))
    assert outs[0] == outs[1] == outs[2]
    assert b"timing" not in outs[0][1]


def test_color_partition_out(tmp_path, pauli_file):
    part = tmp_path / "partition.txt"
    code = run_cli([
        "color", "--input", pauli_file, "--seed", 2, "--partition-out", part,
    ])
    assert code == 0
    blocks = part.read_text().strip().split("\n\n")
    assert sum(len(b.splitlines()) for b in blocks) == 80


def test_color_exit_codes(tmp_path, pauli_file):
    assert run_cli(["color", "--input", tmp_path / "missing.pauli"]) == cli.EXIT_INPUT
    # complement flag is inconsistent with pauli input
    assert run_cli(["color", "--input", pauli_file, "--complement"]) == cli.EXIT_INPUT
    # hard instance + 1 iteration -> iteration limit; partial outputs written
    kfile = tmp_path / "k40.edges"
    run_cli(["generate", "gnp", "--n", 40, "--p", 1.0, "--seed", 0, "--out", kfile])
    out = tmp_path / "partial.json"
    code = run_cli([
        "color", "--input", kfile, "--palette-pct", 5, "--alpha", 1,
        "--max-iterations", 1, "--seed", 0, "--out", out,
    ])
    assert code == cli.EXIT_ITERATION_LIMIT
    assert out.exists()
    # tiny edge budget -> exit 4
    assert run_cli([
        "color", "--input", kfile, "--palette-pct", 5, "--alpha", 1,
        "--edge-budget", 1, "--seed", 0,
    ]) == cli.EXIT_BUDGET


def test_color_mtx_complement(tmp_path):
    mtx = tmp_path / "tri.mtx"
    mtx.write_text("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 3\n1 2\n2 3\n1 3\n")
    out = tmp_path / "c.json"
    code = run_cli([
        "color", "--input", mtx, "--format", "mtx", "--complement",
        "--palette-pct", 100, "--alpha", 5, "--seed", 1, "--out", out,
    ])
    assert code == 0
    # complement of K3 has no edges: any coloring is proper
    assert json.loads(out.read_text())["n"] == 3


def test_validate_cli(tmp_path, pauli_file):
    out = tmp_path / "coloring.json"
    report = tmp_path / "report.json"
    run_cli(["color", "--input", pauli_file, "--seed", 9, "--out", out])
    code = run_cli([
        "validate", out, "--input", pauli_file, "--mode", "exhaustive", "--out", report,
    ])
    assert code == 0
    rep = json.loads(report.read_text())
    assert rep["kind"] == "validation"
    assert rep["proper"] is True
    assert rep["violation_count"] == 0


def test_validate_cli_with_stats_and_guards(tmp_path, pauli_file):
    out = tmp_path / "coloring.json"
    stats = tmp_path / "stats.json"
    report = tmp_path / "report.json"
    run_cli(["color", "--input", pauli_file, "--seed", 4, "--out", out, "--stats-out", stats])
    code = run_cli(["validate", out, "--input", pauli_file, "--stats", stats, "--out", report])
    assert code == 0
    rep = json.loads(report.read_text())
    stats_payload = json.loads(stats.read_text())
    assert rep["ec_max_pct"] == pytest.approx(stats_payload["totals"]["ec_max_pct"])
    # coloring whose n disagrees with the input is rejected
    other = tmp_path / "other.pauli"
    run_cli(["generate", "random-pauli", "--n", 12, "--num-qubits", 5, "--seed", 0, "--out", other])
    assert run_cli(["validate", out, "--input", other]) == cli.EXIT_INPUT


def test_baseline_cli(tmp_path, pauli_file):
    out = tmp_path / "b.json"
    stats = tmp_path / "bs.json"
    code = run_cli([
        "baseline", "--input", pauli_file, "--ordering", "LF",
        "--out", out, "--stats-out", stats, "--no-timing",
    ])
    assert code == 0
    payload = json.loads(stats.read_text())
    assert payload["algorithm"] == "baseline-greedy"
    assert payload["totals"]["adjacency_entries"] > 0
    report = tmp_path / "rep.json"
    assert run_cli(["validate", out, "--input", pauli_file, "--out", report]) == 0
    assert json.loads(report.read_text())["proper"] is True


def test_sweep_and_predict_cli(tmp_path, pauli_file):
    csv_path = tmp_path / "sweep.csv"
    code = run_cli([
        "sweep", "--input", pauli_file, "--grid-p", "5,12.5", "--grid-a", "1..2:1",
        "--seeds", "0,1", "--out", csv_path, "--instance", "t80",
    ])
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "instance,n,m,palette_pct,alpha,colors,ec_max,runtime_s,seed"
    assert len(lines) == 1 + 2 * 2 * 2
    model_path = tmp_path / "model.txt"
    code = run_cli([
        "predict", "--train", csv_path, "--beta", 0.5, "--n", 154641, "--m", 5979614600,
        "--grid-p", "5,12.5", "--grid-a", "1,2", "--model-out", model_path,
    ])
    assert code == 0
    code = run_cli(["predict", "--model", model_path, "--beta", 0.5, "--n", 100, "--m", 1000])
    assert code == 0
    assert run_cli(["predict", "--beta", 0.5, "--n", 1, "--m", 1]) == cli.EXIT_INPUT


def test_module_entry_point(tmp_path):
    path = tmp_path / "m.pauli"
    proc = subprocess.run(
        [sys.executable, "-m", "palettecolor", "generate", "random-pauli",
         "--n", "10", "--num-qubits", "3", "--seed", "0", "--out", str(path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert len(path.read_text().splitlines()) == 10


def test_default_threads_env_override(monkeypatch):
    monkeypatch.setenv("PALETTECOLOR_THREADS", "3")
    assert cli._default_threads() == 3
    monkeypatch.setenv("PALETTECOLOR_THREADS", "junk")
    assert cli._default_threads() >= 1


def test_predict_output_on_grid(tmp_path, pauli_file, capsys):
    csv_path = tmp_path / "sweep.csv"
    run_cli([
        "sweep", "--input", pauli_file, "--grid-p", "5,12.5", "--grid-a", "1,2",
        "--seeds", "0", "--out", csv_path,
    ])
    run_cli(["predict", "--train", csv_path, "--beta", 0.3, "--n", 500, "--m", 60000,
             "--grid-p", "5,12.5", "--grid-a", "1,2"])
    out = capsys.readouterr().out
    payload = json.loads(out.strip().splitlines()[-1])
    assert payload["palette_pct"] in (5.0, 12.5)
    assert payload["alpha"] in (1.0, 2.0)

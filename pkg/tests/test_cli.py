import json
import os
import subprocess
import sys

import pytest

from paulicut.cli import main
from paulicut.graphs import format_graph, parse_graph_file

TRIANGLE_TEXT = "3 3\n1 2 1\n1 3 1\n2 3 1\n"


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "triangle.txt"
    path.write_text(TRIANGLE_TEXT)
    return str(path)


def read_records(path):
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


FAST_TRAIN = ["--lr", "0.05", "--max-epochs", "300"]


class TestSolve:
    def test_records_and_summary(self, triangle_file, tmp_path, capsys):
        out = str(tmp_path / "records.jsonl")
        rc = main(
            ["solve", "--graph", triangle_file, "--k", "1", "--layers", "2",
             "--seeds", "2", "--out", out] + FAST_TRAIN
        )
        assert rc == 0
        assert "summary: solve" in capsys.readouterr().out
        records = read_records(out)
        assert len(records) == 2
        for rec, seed in zip(records, (0, 1)):
            assert rec["schema"] == 1
            assert rec["command"] == "solve"
            assert rec["metrics"]["seed"] == seed
            assert rec["metrics"]["cut"] == 4.0
            assert rec["metrics"]["ratio_exact"] == 1.0
            assert rec["config"]["k"] == 1

    def test_stdout_mode_emits_jsonl(self, triangle_file, capsys):
        rc = main(
            ["solve", "--graph", triangle_file, "--k", "1", "--layers", "1"] + FAST_TRAIN
        )
        assert rc == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[-1].startswith("summary:")
        rec = json.loads(lines[0])
        assert rec["command"] == "solve"

    def test_missing_file_is_exit_2(self, tmp_path, capsys):
        missing = str(tmp_path / "nope.txt")
        rc = main(["solve", "--graph", missing, "--k", "1"])
        assert rc == 2
        assert missing in capsys.readouterr().err

    def test_malformed_file_is_exit_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("3 1\n1 2\n")
        rc = main(["solve", "--graph", str(bad), "--k", "1"])
        assert rc == 1
        assert "line 2" in capsys.readouterr().err

    def test_parallel_jobs_match_serial(self, triangle_file, tmp_path):
        serial, parallel = str(tmp_path / "s.jsonl"), str(tmp_path / "p.jsonl")
        argv = ["solve", "--graph", triangle_file, "--k", "1", "--layers", "1",
                "--seeds", "2", "--seed-base", "5"] + FAST_TRAIN
        assert main(argv + ["--jobs", "1", "--out", serial]) == 0
        assert main(argv + ["--jobs", "2", "--out", parallel]) == 0
        strip = lambda recs: [(r["metrics"]["seed"], r["metrics"]["cut"]) for r in recs]
        assert strip(read_records(serial)) == strip(read_records(parallel))


def test_gen_round_trips(tmp_path, capsys):
    out = str(tmp_path / "inst.txt")
    rc = main(["gen", "--m", "12", "--deg", "4.0", "--seed", "9", "--out", out])
    assert rc == 0
    assert "wrote" in capsys.readouterr().out
    g = parse_graph_file(out)
    assert g.num_vertices == 12
    assert 2 * g.num_edges / 12 >= 3.0
    with open(out) as fh:
        assert fh.read() == format_graph(g)  # bit-exact round trip


def test_bound_pinned_value(tmp_path, capsys):
    k2 = tmp_path / "k2.txt"
    k2.write_text("2 1\n1 2 1\n")
    out = str(tmp_path / "bound.jsonl")
    rc = main(["bound", "--graph", str(k2), "--eps", "1.0", "--delta", "0.5",
               "--alpha", "1.0", "--out", out])
    assert rc == 0
    assert "532 shots" in capsys.readouterr().out
    assert read_records(out)[0]["metrics"]["shots_per_family"] == 532


def test_bound_auto_alpha_requires_k(tmp_path, capsys):
    k2 = tmp_path / "k2.txt"
    k2.write_text("2 1\n1 2 1\n")
    rc = main(["bound", "--graph", str(k2), "--eps", "0.3", "--delta", "0.1"])
    assert rc == 2
    assert "--k" in capsys.readouterr().err
    assert main(["bound", "--graph", str(k2), "--eps", "0.3", "--delta", "0.1",
                 "--k", "1"]) == 0


class TestParentham:
    def test_exhaustive_triangle(self, triangle_file, tmp_path, capsys):
        out = str(tmp_path / "ph.jsonl")
        rc = main(["parentham", "--graph", triangle_file, "--k", "1",
                   "--exhaustive", "--out", out])
        assert rc == 0
        assert "OK" in capsys.readouterr().out
        rec = read_records(out)[0]
        assert rec["metrics"]["num_colors"] == 3
        assert rec["metrics"]["assignments_checked"] == 4  # 2^(m-1)
        assert rec["metrics"]["worst_discrepancy"] < 1e-9

    def test_sampled_mode(self, triangle_file, capsys):
        rc = main(["parentham", "--graph", triangle_file, "--k", "1",
                   "--samples", "20", "--seed", "3"])
        assert rc == 0
        assert "20 assignments" in capsys.readouterr().out

    def test_exhaustive_size_guard(self, tmp_path, capsys):
        big = tmp_path / "big.txt"
        edges = [(i, i + 1) for i in range(17)]
        big.write_text("18 17\n" + "".join(f"{i+1} {j+1} 1\n" for i, j in edges))
        rc = main(["parentham", "--graph", str(big), "--k", "1", "--exhaustive"])
        assert rc == 2


def test_plateau_quick(tmp_path, capsys):
    out = str(tmp_path / "plateau.jsonl")
    rc = main(["plateau", "--n", "3", "--k", "1", "--depth-rows", "6",
               "--trials", "16", "--seed", "0", "--out", out])
    assert rc == 0
    assert "normalized variance" in capsys.readouterr().out
    rec = read_records(out)[0]
    assert rec["metrics"]["predicted_normalized"] == 2.0 ** (-6)
    assert rec["metrics"]["trials"] == 16


def test_ablate_quick(tmp_path, capsys):
    out = str(tmp_path / "ablate.jsonl")
    rc = main(["ablate", "--m", "8", "--instances", "1", "--k", "2", "--layers", "1",
               "--variants", "tanh,quadratic", "--inits", "1", "--seed", "1",
               "--out", out] + FAST_TRAIN)
    assert rc == 0
    records = read_records(out)
    assert {r["metrics"]["variant"] for r in records} == {"tanh", "quadratic"}
    for rec in records:
        counts = rec["metrics"]["histogram_counts"]
        assert len(counts) == 40
        assert sum(counts) == 8  # one instance, one init: m pooled expectations
        assert len(rec["metrics"]["histogram_edges"]) == 41


def test_sweep_quick(tmp_path, capsys):
    out = str(tmp_path / "sweep.jsonl")
    rc = main(["sweep", "--k", "2", "--m-values", "8", "--target-r", "0.4",
               "--instances", "1", "--inits", "1", "--seed", "2",
               "--max-layers", "2", "--out", out] + FAST_TRAIN)
    assert rc == 0
    rec = read_records(out)[0]
    assert rec["metrics"]["m"] == 8
    assert rec["metrics"]["depth_rows"] == 2 * rec["metrics"]["layers"]
    assert rec["metrics"]["ms_gates"] == rec["metrics"]["layers"] * (rec["metrics"]["n"] // 2)
    assert "MS gates" in capsys.readouterr().out


def test_pure_python_env_selects_fallback_backend():
    code = (
        "import paulicut.backend as b; print(b.backend_name())"
    )
    env = dict(os.environ, PAULICUT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "python"
    env.pop("PAULICUT_PURE_PYTHON")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() in ("cython", "python")


def test_cli_entry_point_installed():
    out = subprocess.run(
        [sys.executable, "-m", "paulicut.cli", "--help"], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert "solve" in out.stdout and "parentham" in out.stdout

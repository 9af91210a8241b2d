"""Tests for the ``linf-bounds`` command line."""
import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from linf_bounds.bounded import BoundedInstance, e_inf_bounds
from linf_bounds.cli import main, parse_grid


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestBound:
    def test_json_case_a(self, capsys):
        code, out, _ = run(["bound", "--n", "100", "--p", "10", "--sigma", "1", "--B", "1", "--q", "inf"], capsys)
        assert code == 0
        rec = json.loads(out)
        assert rec["regime"] == "CaseA"
        assert rec["q"] == "inf"
        np.testing.assert_allclose(rec["upper"], e_inf_bounds(BoundedInstance(100, 10, 1.0, 1.0)).upper)

    def test_finite_q(self, capsys):
        code, out, _ = run(["bound", "--n", "10", "--p", "1000", "--sigma", "0.01", "--B", "1", "--q", "3"], capsys)
        rec = json.loads(out)
        assert code == 0 and rec["regime"] == "Case2" and rec["modulo_constant"] is True
        assert rec["lower"] is None

    def test_csv(self, capsys):
        code, out, _ = run(["bound", "--n", "5", "--p", "2", "--sigma", "0.5", "--B", "1", "--format", "csv"], capsys)
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and len(rows) == 1
        assert float(rows[0]["upper"]) > 0

    def test_q_below_two(self, capsys):
        code, _, err = run(["bound", "--n", "5", "--p", "2", "--sigma", "0.5", "--B", "1", "--q", "1.5"], capsys)
        assert code == 2
        assert "q must be ≥ 2" in err

    def test_sigma_above_B(self, capsys):
        code, _, err = run(["bound", "--n", "5", "--p", "2", "--sigma", "2", "--B", "1"], capsys)
        assert code == 2 and "sigma" in err

    def test_missing_argument(self, capsys):
        code, _, err = run(["bound", "--n", "5"], capsys)
        assert code == 2 and err.startswith("linf-bounds: error:")

    def test_output_file(self, tmp_path, capsys):
        path = tmp_path / "b.json"
        code, out, _ = run(["bound", "--n", "5", "--p", "2", "--sigma", "0.5", "--B", "1", "--output", str(path)],
                           capsys)
        assert code == 0 and out == ""
        assert json.loads(path.read_text())["n"] == 5


class TestVerify:
    def test_lemmas(self, capsys):
        code, out, _ = run(["verify", "--suite", "lemmas"], capsys)
        rows = [json.loads(line) for line in out.splitlines()]
        assert code == 0 and rows and all(r["ok"] for r in rows)

    def test_unknown_suite(self, capsys):
        code, _, err = run(["verify", "--suite", "nosuch"], capsys)
        assert code == 2 and "nosuch" in err

    def test_bad_reps(self, capsys):
        code, _, _ = run(["verify", "--suite", "lemmas", "--reps", "0"], capsys)
        assert code == 2

    def test_reproducible(self, tmp_path, capsys):
        paths = [tmp_path / f"r{i}.csv" for i in range(2)]
        for path in paths:
            code, _, _ = run(["verify", "--suite", "tails-q", "--reps", "10000", "--seed", "7",
                              "--format", "csv", "--output", str(path)], capsys)
            assert code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_seed_from_environment(self, tmp_path, capsys, monkeypatch):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        monkeypatch.setenv("LINF_BOUNDS_SEED", "7")
        run(["verify", "--suite", "tails-q", "--reps", "10000", "--format", "csv", "--output", str(a)], capsys)
        monkeypatch.delenv("LINF_BOUNDS_SEED")
        run(["verify", "--suite", "tails-q", "--reps", "10000", "--seed", "7", "--format", "csv",
             "--output", str(b)], capsys)
        assert a.read_bytes() == b.read_bytes()


class TestSample:
    @pytest.mark.parametrize("dist,dim", [("two-point", 1), ("bernoulli-worst", 3),
                                          ("heavy-tail-g", 1), ("product-h", 3)])
    def test_shapes(self, dist, dim, capsys):
        code, out, _ = run(["sample", "--dist", dist, "--count", "4", "--p", "3", "--sigma", "0.5",
                            "--tau", "0.5", "--K", "1", "--format", "csv"], capsys)
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0
        assert rows[0] == [f"x{j}" for j in range(dim)]
        assert len(rows) == 5

    def test_seeded(self, capsys):
        argv = ["sample", "--dist", "heavy-tail-g", "--count", "5", "--seed", "3"]
        assert run(argv, capsys)[1] == run(argv, capsys)[1]

    def test_unknown_dist(self, capsys):
        assert run(["sample", "--dist", "cauchy"], capsys)[0] == 2

    def test_bad_count(self, capsys):
        assert run(["sample", "--dist", "two-point", "--count", "0"], capsys)[0] == 2


class TestSweep:
    def test_q_grid(self, capsys):
        code, out, _ = run(["sweep", "--n", "100", "--p", "10", "--sigma", "0.05", "--B", "1",
                            "--q", "2.5:64:6:log"], capsys)
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and len(rows) == 6
        upper = [float(r["upper"]) for r in rows]
        assert all(b <= 4 * a for a, b in zip(upper, upper[1:]))

    def test_truth_column(self, capsys):
        code, out, _ = run(["sweep", "--n", "10", "--p", "1:1000:4:log", "--sigma", "0.5", "--B", "1"], capsys)
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0
        for r in rows:
            assert float(r["lower"]) <= float(r["truth"]) <= float(r["upper"])
            assert float(r["truth_se"]) == 0.0

    def test_empty_grid(self, capsys):
        code, _, err = run(["sweep", "--n", "10", "--p", "1:10:0", "--sigma", "0.5", "--B", "1"], capsys)
        assert code == 2 and "empty grid" in err

    def test_malformed_grid(self, capsys):
        assert run(["sweep", "--n", "10", "--p", "1:10", "--sigma", "0.5", "--B", "1"], capsys)[0] == 2

    def test_too_many_swept(self, capsys):
        code, _, _ = run(["sweep", "--n", "10:20:2", "--p", "1:10:2", "--sigma", "0.1:0.5:2", "--B", "1"], capsys)
        assert code == 2

    def test_parse_grid_log(self):
        np.testing.assert_allclose(parse_grid("1:100:3:log", "sigma"), [1.0, 10.0, 100.0])
        assert parse_grid("inf", "q") == [math.inf]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "linf_bounds", "bound", "--n", "100", "--p", "10",
                           "--sigma", "1", "--B", "1"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["regime"] == "CaseA"

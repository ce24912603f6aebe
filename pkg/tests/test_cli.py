import json
import subprocess
import sys

import numpy as np
import pytest

from lpiso import frucht, random_permute, save_graph
from lpiso.bench import BENCH_CSV_HEADER, TIMING_CSV_HEADER, family_graph
from lpiso.cli import main
from lpiso.io import load_graph

from helpers import cycle, disjoint_union


@pytest.fixture
def frucht_pair(tmp_path):
    g = frucht()
    h, _ = random_permute(g, 4)
    pa, pb = tmp_path / "a.g", tmp_path / "b.g"
    save_graph(g, pa)
    save_graph(h, pb)
    return str(pa), str(pb)


class TestSolveCommand:
    def test_isomorphic_pair(self, frucht_pair, capsys):
        code = main(["solve", *frucht_pair, "--restarts", "20", "--seed", "7"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["schema"] == 1
        assert out["verdict"] == "isomorphic"
        assert sorted(out["permutation"]) == list(range(1, 13))

    def test_permutation_round_trips(self, frucht_pair, capsys):
        # reload the graphs independently and re-check the printed mapping
        main(["solve", *frucht_pair, "--seed", "3"])
        out = json.loads(capsys.readouterr().out)
        a = load_graph(frucht_pair[0]).adj
        b = load_graph(frucht_pair[1]).adj
        m = np.array(out["permutation"]) - 1
        assert np.array_equal(b[np.ix_(m, m)], a)

    def test_not_isomorphic_exit_code(self, tmp_path, capsys):
        pa, pb = tmp_path / "c6.g", tmp_path / "tri.g"
        save_graph(cycle(6), pa)
        save_graph(disjoint_union(cycle(3), cycle(3)), pb)
        code = main(["solve", str(pa), str(pb), "--seed", "0"])
        out = json.loads(capsys.readouterr().out)
        assert code == 1
        assert out["verdict"] == "not_isomorphic"
        assert out["reason"] == "spectra_mismatch"

    def test_same_file_twice(self, frucht_pair, capsys):
        code = main(["solve", frucht_pair[0], frucht_pair[0], "--seed", "1"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0 and out["verdict"] == "isomorphic"

    def test_parse_error_exits_64(self, tmp_path, capsys):
        bad = tmp_path / "bad.g"
        bad.write_text("2 1\n1 5 1.0\n")
        code = main(["solve", str(bad), str(bad)])
        assert code == 64
        assert "error" in capsys.readouterr().err

    def test_missing_file_exits_64(self, capsys):
        assert main(["solve", "/nonexistent/a.g", "/nonexistent/b.g"]) == 64

    def test_usage_error_exits_64(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve", "only-one-arg"])
        assert exc.value.code == 64

    def test_entropy_seed_announced(self, frucht_pair, capsys):
        code = main(["solve", *frucht_pair])
        err = capsys.readouterr().err
        assert code == 0
        assert "seed=" in err

    def test_verbose_trace(self, frucht_pair, capsys):
        code = main(["solve", *frucht_pair, "--seed", "2", "--verbose", "--restarts", "2"])
        captured = capsys.readouterr()
        assert code == 0
        assert "iter,primal,dual" in captured.err

    def test_dump_mask(self, frucht_pair, tmp_path, capsys):
        target = tmp_path / "mask.txt"
        main(["solve", *frucht_pair, "--seed", "2", "--no-pruning", "--dump-mask", str(target)])
        text = target.read_text().splitlines()
        assert text[-1].startswith("allowed=14 ratio=0.097")


class TestBenchCommand:
    def test_frucht_sparsity_only(self, capsys):
        code = main(["bench", "--family", "frucht", "--trials", "0", "--seed", "1"])
        out = capsys.readouterr().out.splitlines()
        assert code == 0
        assert out[0] == BENCH_CSV_HEADER
        family, n, ratio, trials, *_ = out[1].split(",")
        assert family == "frucht" and n == "12" and trials == "0"
        assert float(ratio) == pytest.approx(14 / 144, abs=1e-6)

    def test_r1n_small_run(self, tmp_path):
        target = tmp_path / "bench.csv"
        code = main([
            "bench", "--family", "r1n", "--sizes", "10", "--trials", "3",
            "--seed", "5", "--out", str(target),
        ])
        assert code == 0
        lines = target.read_text().splitlines()
        assert lines[0] == BENCH_CSV_HEADER
        row = lines[1].split(",")
        assert row[0] == "r1n" and row[1] == "10" and row[3] == "3"
        assert 0.0 <= float(row[4]) <= 1.0 and 0.0 <= float(row[5]) <= 1.0

    def test_unknown_family(self, capsys):
        assert main(["bench", "--family", "nope", "--trials", "0", "--seed", "1"]) == 64

    def test_g2n_requires_square(self, capsys):
        assert main(["bench", "--family", "g2n", "--sizes", "10", "--trials", "0", "--seed", "1"]) == 64

    def test_file_family(self, frucht_pair, capsys):
        code = main(["bench", "--family", f"file:{frucht_pair[0]}", "--trials", "0", "--seed", "2"])
        out = capsys.readouterr().out.splitlines()
        assert code == 0
        assert out[1].split(",")[1] == "12"


class TestTimingCommand:
    def test_single_size(self, capsys):
        code = main(["timing", "--sizes", "16", "--repeats", "2", "--iters", "5", "--seed", "0"])
        out = capsys.readouterr().out.splitlines()
        assert code == 0
        assert out[0] == TIMING_CSV_HEADER
        n, iters, mean_it, total, min_it, min_total = out[1].split(",")
        assert n == "16" and iters == "5"
        assert float(min_it) <= float(mean_it)
        assert float(mean_it) * 5 == pytest.approx(float(total), rel=1e-6)

    def test_requires_sizes(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["timing"])
        assert exc.value.code == 64


class TestModuleEntry:
    def test_python_dash_m(self, frucht_pair):
        proc = subprocess.run(
            [sys.executable, "-m", "lpiso", "solve", *frucht_pair, "--seed", "3"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["verdict"] == "isomorphic"


def test_family_graph_varieties():
    assert family_graph("petersen", None, 0).n == 10
    assert family_graph("g2n", 36, 0).n == 36
    assert family_graph("r1n", 25, 0).n == 25
    with pytest.raises(ValueError):
        family_graph("r1n", None, 0)


def test_benchmark_row_invariants():
    from lpiso.bench import run_benchmark
    from lpiso.pipeline import SolveConfig

    rows = run_benchmark("g2n", [16], trials=2, seed=3, config=SolveConfig())
    (row,) = rows
    assert row.n == 16
    assert 0.0 < row.sparsity_ratio <= 1.0
    assert 0.0 <= row.success_no_mask <= 1.0
    assert 0.0 <= row.success_with_mask <= 1.0
    assert row.mean_iters > 0 and row.mean_wall_time_s > 0
    # 4x4 grid: corner/edge/interior degree classes bound the mask ratio
    assert row.sparsity_ratio < 1.0

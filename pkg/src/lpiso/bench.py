"""Benchmark and timing harness over the standard graph families.

Families: ``r1n`` (G(n, 0.1) random graphs), ``g2n`` (square 2-D grids),
``frucht``, ``petersen``, and ``file:<path>`` for externally supplied
graphs.  The reported sparsity ratio is always the unpruned invariant-mask
ratio (the fraction of permutation entries not excluded by the walk-count
and projector invariants); solves honor the pruning flag independently.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

import numpy as np

from .admm import AdmmParams, CommutantProjector, admm_solve, sample_direction
from .graphs import WeightedGraph, erdos_renyi, frucht, grid2d, petersen, random_permute, spectrum
from .io import load_graph
from .masks import MaskOptions, construct_K
from .pipeline import SolveConfig, success_trials

__all__ = [
    "BenchmarkRow",
    "TimingRow",
    "BENCH_CSV_HEADER",
    "TIMING_CSV_HEADER",
    "family_graph",
    "run_benchmark",
    "run_timing",
    "fit_loglog_slope",
    "bench_rows_to_csv",
    "timing_rows_to_csv",
]

BENCH_CSV_HEADER = (
    "family,n,sparsity_ratio,trials,success_no_mask,success_with_mask,"
    "mean_iters,mean_wall_time_s"
)
TIMING_CSV_HEADER = "n,iters,iter_time_s,total_time_s,iter_time_min_s,total_time_min_s"


@dataclass(frozen=True)
class BenchmarkRow:
    family: str
    n: int
    sparsity_ratio: float
    trials: int
    success_no_mask: float | None
    success_with_mask: float | None
    mean_iters: float | None
    mean_wall_time_s: float | None

    def to_csv(self) -> str:
        def fmt(x, spec):
            return "" if x is None else format(x, spec)

        return ",".join(
            [
                self.family,
                str(self.n),
                f"{self.sparsity_ratio:.6f}",
                str(self.trials),
                fmt(self.success_no_mask, ".4f"),
                fmt(self.success_with_mask, ".4f"),
                fmt(self.mean_iters, ".1f"),
                fmt(self.mean_wall_time_s, ".6f"),
            ]
        )


@dataclass(frozen=True)
class TimingRow:
    n: int
    iters: int
    iter_time_s: float
    total_time_s: float
    iter_time_min_s: float
    total_time_min_s: float

    def to_csv(self) -> str:
        return (
            f"{self.n},{self.iters},{self.iter_time_s:.6e},{self.total_time_s:.6e},"
            f"{self.iter_time_min_s:.6e},{self.total_time_min_s:.6e}"
        )


def family_graph(family: str, n: int | None, seed: int) -> WeightedGraph:
    """Instantiate one benchmark graph; deterministic for a fixed seed."""
    fam = family.lower()
    if fam == "r1n":
        if n is None:
            raise ValueError("family r1n needs a size")
        return erdos_renyi(n, 0.1, seed)
    if fam == "g2n":
        if n is None:
            raise ValueError("family g2n needs a size")
        side = math.isqrt(n)
        if side * side != n:
            raise ValueError(f"family g2n needs a perfect-square size, got {n}")
        return grid2d(side, side)
    if fam == "frucht":
        return frucht()
    if fam == "petersen":
        return petersen()
    if fam.startswith("file:"):
        return load_graph(family[len("file:") :])
    raise ValueError(f"unknown family {family!r}")


def _pair_sparsity_ratio(a: WeightedGraph, seed: int, tol: float) -> float:
    """Unpruned invariant-mask ratio on (a, random relabelling of a)."""
    shuffled, _ = random_permute(a, np.random.SeedSequence(seed, spawn_key=(0,)))
    sa = spectrum(a)
    sb = spectrum(shuffled)
    mask = construct_K(a, shuffled, (sa, sb), MaskOptions(pruning=False, tol=tol))
    return mask.sparsity_ratio


def run_benchmark(
    family: str,
    sizes: list[int | None],
    trials: int,
    seed: int = 0,
    config: SolveConfig | None = None,
) -> list[BenchmarkRow]:
    """One row per size: mask ratio plus success rates with and without mask."""
    cfg = config or SolveConfig()
    rows = []
    for n in sizes:
        a = family_graph(family, n, seed)
        ratio = _pair_sparsity_ratio(a, seed, cfg.mask_tol)
        if trials < 1:
            rows.append(
                BenchmarkRow(family, a.n, ratio, 0, None, None, None, None)
            )
            continue
        rate_no_mask, reps_nm = success_trials(
            a, trials, seed, replace(cfg, use_mask=False)
        )
        rate_mask, reps_m = success_trials(
            a, trials, seed, replace(cfg, use_mask=True)
        )
        all_recs = [r for rep in (*reps_nm, *reps_m) for r in rep.restarts]
        mean_iters = float(np.mean([r.iterations for r in all_recs]))
        mean_wall = float(np.mean([r.wall_time_s for r in all_recs]))
        rows.append(
            BenchmarkRow(
                family, a.n, ratio, trials, rate_no_mask, rate_mask, mean_iters, mean_wall
            )
        )
    return rows


def run_timing(
    sizes: list[int],
    repeats: int = 3,
    iters: int = 30,
    seed: int = 0,
) -> list[TimingRow]:
    """Wall time of the solver loop on G(n, 0.1) pairs, per size.

    Zero tolerances force exactly ``iters`` iterations so the per-iteration
    time is total/iters.  Eigendecomposition and rounding are excluded; a
    short warmup run absorbs allocation effects.
    """
    if repeats < 1 or iters < 1:
        raise ValueError("repeats and iters must be positive")
    params = AdmmParams(max_iter=iters, eps_primal=0.0, eps_dual=0.0)
    warm = AdmmParams(max_iter=3, eps_primal=0.0, eps_dual=0.0)
    rows = []
    for n in sizes:
        a = erdos_renyi(n, 0.1, seed)
        b, _ = random_permute(a, seed + 1)
        sa, sb = spectrum(a), spectrum(b)
        projector = CommutantProjector(sa, sb)
        direction = sample_direction(n, seed + 2)
        admm_solve(a, b, (sa, sb), None, direction, warm, projector=projector)
        totals = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            admm_solve(a, b, (sa, sb), None, direction, params, projector=projector)
            totals.append(time.perf_counter() - t0)
        rows.append(
            TimingRow(
                n=n,
                iters=iters,
                iter_time_s=float(np.mean(totals)) / iters,
                total_time_s=float(np.mean(totals)),
                iter_time_min_s=min(totals) / iters,
                total_time_min_s=min(totals),
            )
        )
    return rows


def fit_loglog_slope(sizes, times) -> float:
    """Least-squares slope of log(time) against log(size)."""
    return float(np.polyfit(np.log(np.asarray(sizes, float)), np.log(np.asarray(times, float)), 1)[0])


def bench_rows_to_csv(rows: list[BenchmarkRow]) -> str:
    return "\n".join([BENCH_CSV_HEADER, *(r.to_csv() for r in rows)]) + "\n"


def timing_rows_to_csv(rows: list[TimingRow]) -> str:
    return "\n".join([TIMING_CSV_HEADER, *(r.to_csv() for r in rows)]) + "\n"

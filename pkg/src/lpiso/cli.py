"""Command-line interface.

Exit codes for ``solve``: 0 isomorphic, 1 not isomorphic, 2 unknown,
64 usage or file-format errors, 70 internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .admm import AdmmParams
from .bench import (
    bench_rows_to_csv,
    run_benchmark,
    run_timing,
    timing_rows_to_csv,
)
from .io import GraphFormatError, load_graph
from .masks import MaskOptions, construct_K
from .pipeline import (
    VERDICT_ISOMORPHIC,
    VERDICT_NOT_ISOMORPHIC,
    SolveConfig,
    solve_gip,
)
from .graphs import spectrum

__all__ = ["main", "entrypoint"]

EXIT_ISOMORPHIC = 0
EXIT_NOT_ISOMORPHIC = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_INTERNAL = 70


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2, which collides with "unknown"
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    p = _Parser(prog="lpiso", description="Randomized LP heuristic for graph isomorphism")
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="decide whether two graph files are isomorphic")
    ps.add_argument("graph_a")
    ps.add_argument("graph_b")
    ps.add_argument("--restarts", type=int, default=50)
    ps.add_argument("--seed", type=int, default=None)
    ps.add_argument("--no-mask", action="store_true", help="skip invariant masks")
    ps.add_argument("--no-pruning", action="store_true", help="skip mask pruning")
    ps.add_argument("--tol", type=float, default=1e-7, help="solver residual tolerance")
    ps.add_argument("--max-iter", type=int, default=5000)
    ps.add_argument("--verbose", action="store_true", help="progress and residual traces on stderr")
    ps.add_argument("--dump-mask", metavar="PATH", help="write the mask as a 0/1 text matrix")

    pb = sub.add_parser("bench", help="success-rate benchmark over a graph family")
    pb.add_argument("--family", required=True, help="r1n, g2n, frucht, petersen, or file:<path>")
    pb.add_argument("--sizes", default="", help="comma-separated sizes (families r1n/g2n)")
    pb.add_argument("--trials", type=int, default=50)
    pb.add_argument("--seed", type=int, default=None)
    pb.add_argument("--no-pruning", action="store_true")
    pb.add_argument("--tol", type=float, default=1e-7)
    pb.add_argument("--max-iter", type=int, default=5000)
    pb.add_argument("--out", help="CSV output path (default stdout)")

    pt = sub.add_parser("timing", help="solver wall time per size, for scaling fits")
    pt.add_argument("--sizes", required=True, help="comma-separated sizes")
    pt.add_argument("--repeats", type=int, default=3)
    pt.add_argument("--iters", type=int, default=30)
    pt.add_argument("--seed", type=int, default=None)
    pt.add_argument("--out", help="CSV output path (default stdout)")
    return p


def _pick_seed(seed: int | None) -> int:
    """Use entropy when no seed is given, and announce it for replay."""
    if seed is not None:
        return seed
    chosen = int(np.random.SeedSequence().generate_state(1, np.uint32)[0])
    print(f"seed={chosen}", file=sys.stderr)
    return chosen


def _solve_config(args, seed: int) -> SolveConfig:
    return SolveConfig(
        restarts=args.restarts if hasattr(args, "restarts") else 50,
        seed=seed,
        use_mask=not getattr(args, "no_mask", False),
        use_pruning=not args.no_pruning,
        admm=AdmmParams(max_iter=args.max_iter, eps_primal=args.tol, eps_dual=args.tol),
    )


def _cmd_solve(args) -> int:
    a = load_graph(args.graph_a)
    b = load_graph(args.graph_b)
    seed = _pick_seed(args.seed)
    cfg = _solve_config(args, seed)
    if args.dump_mask and a.n == b.n:
        sa, sb = spectrum(a), spectrum(b)
        mask = construct_K(a, b, (sa, sb), MaskOptions(pruning=cfg.use_pruning))
        with open(args.dump_mask, "w", encoding="utf-8") as fh:
            fh.write(mask.to_text())
    report = solve_gip(a, b, cfg)
    if args.verbose:
        _dump_traces(a, b, cfg, report)
    print(json.dumps(report.to_dict(), indent=2))
    if report.verdict == VERDICT_ISOMORPHIC:
        return EXIT_ISOMORPHIC
    if report.verdict == VERDICT_NOT_ISOMORPHIC:
        return EXIT_NOT_ISOMORPHIC
    return EXIT_UNKNOWN


def _dump_traces(a, b, cfg: SolveConfig, report) -> None:
    """Re-run the executed restarts with history recording and print the
    residual traces as CSV blocks on stderr."""
    from .admm import CommutantProjector, admm_solve, sample_direction
    from .graphs import spectra_equal
    from .masks import MaskOptions

    if a.n != b.n:
        return
    sa, sb = spectrum(a, cfg.grouping_tol), spectrum(b, cfg.grouping_tol)
    if not spectra_equal(sa, sb, cfg.spectra_tol):
        return
    mask = None
    if cfg.use_mask:
        mask = construct_K(a, b, (sa, sb), MaskOptions(pruning=cfg.use_pruning, tol=cfg.mask_tol))
        if mask.infeasible():
            return
    projector = CommutantProjector(sa, sb)
    for rec in report.restarts:
        sol = admm_solve(
            a, b, (sa, sb), mask, sample_direction(a.n, rec.seed), cfg.admm,
            projector=projector, record_history=True,
        )
        print(f"# restart seed={rec.seed}", file=sys.stderr)
        print("iter,primal,dual", file=sys.stderr)
        for it, prim, dual in sol.history:
            print(f"{it},{prim:.6e},{dual:.6e}", file=sys.stderr)


def _parse_sizes(raw: str) -> list[int]:
    if not raw.strip():
        return []
    try:
        return [int(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError:
        raise GraphFormatError(f"invalid size list {raw!r}") from None


def _cmd_bench(args) -> int:
    seed = _pick_seed(args.seed)
    sizes = _parse_sizes(args.sizes)
    sized: list[int | None] = sizes if sizes else [None]
    cfg = SolveConfig(
        restarts=1,
        seed=seed,
        use_pruning=not args.no_pruning,
        admm=AdmmParams(max_iter=args.max_iter, eps_primal=args.tol, eps_dual=args.tol),
    )
    rows = run_benchmark(args.family, sized, args.trials, seed, cfg)
    csv_text = bench_rows_to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    else:
        print(csv_text, end="")
    return 0


def _cmd_timing(args) -> int:
    seed = _pick_seed(args.seed)
    sizes = _parse_sizes(args.sizes)
    if not sizes:
        raise GraphFormatError("timing needs at least one size")
    rows = run_timing(sizes, repeats=args.repeats, iters=args.iters, seed=seed)
    csv_text = timing_rows_to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    else:
        print(csv_text, end="")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "bench":
            return _cmd_bench(args)
        if args.command == "timing":
            return _cmd_timing(args)
        parser.error(f"unknown command {args.command!r}")
    except (GraphFormatError, FileNotFoundError, ValueError) as exc:
        print(f"lpiso: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - defensive
        print(f"lpiso: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_INTERNAL


def entrypoint() -> None:
    sys.exit(main())

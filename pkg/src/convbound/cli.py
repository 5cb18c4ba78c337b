"""Command-line front end.

Exit status: 0 on success, 1 on usage or parse errors, 2 when the function
cannot be evaluated (for instance at the centre). Sweep rows are written
and flushed as they complete, so partial output survives a failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from contextlib import contextmanager
from typing import Iterable, Sequence

import numpy as np

from .corpus import CORPUS
from .errormodel import (
    CancellingPairFamily,
    EntireFamily,
    measure_false_positive_rate,
    measure_rates,
)
from .experiments import (
    CORPUS_FIELDS,
    SWEEP_N_FIELDS,
    SWEEP_Z0_FIELDS,
    format_complex,
    log_grid,
    parse_complex,
    run_corpus,
    sweep_n,
    sweep_n_rows,
    sweep_z0,
    sweep_z0_rows,
    write_csv,
)
from .function import AnalyticFunction
from .poletest import CenterNotFinite, PoleTestConfig, test_contour
from .quadrature import Contour, EvaluationFailed
from .search import SearchConfig, SearchStatus, search_radius

MODES = ("test", "bound", "corpus", "sweep-z0", "sweep-n", "rates")
CSV_BY_DEFAULT = {"sweep-z0", "sweep-n", "rates"}
RATES_FIELDS = ("predicted", "measured", "trials", "stderr")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_EVALUATION = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="convbound",
        description="Detect poles inside circles and bound radii of convergence.",
    )
    p.add_argument("mode", nargs="?", choices=MODES, help="what to run")
    p.add_argument("--mode", dest="mode_flag", choices=MODES, help="alternative to the positional mode")
    p.add_argument("--expr", help="function of z, e.g. '1/(1+z)'")
    p.add_argument("--z0", default="0", help="centre, e.g. 0, 2, -1.1, i, 1+2i (default 0)")
    p.add_argument("--radius", type=float, help="contour radius (test mode)")
    p.add_argument("--samples", type=int, default=3, help="probe functions per contour, M")
    p.add_argument("--points", type=int, default=1000, help="quadrature points, N (even)")
    p.add_argument("--epsilon", type=float, default=1e-2, help="threshold fraction")
    p.add_argument("--delta-factor", type=float, default=0.1, help="inconclusive when delta > factor*T")
    p.add_argument("--tolerance", type=float, default=0.0, help="stop bisecting below this width")
    p.add_argument("--limit", type=float, default=1024.0, help="largest radius tried")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=1, help="sweep-n: seeds per point count (median reported)")
    p.add_argument("--z0-grid", default="-0.5..3", help="sweep-z0: START..STOP (complex endpoints)")
    p.add_argument("--grid-count", type=int, default=50, help="sweep-z0: number of centres")
    p.add_argument("--n-grid", default="100..10000", help="sweep-n: START..STOP point counts")
    p.add_argument("--n-count", type=int, default=5, help="sweep-n: number of point counts")
    p.add_argument("--trials", type=int, default=1000, help="rates: number of random functions")
    p.add_argument(
        "--rate-kind",
        choices=("false-negative", "false-positive"),
        default="false-negative",
        help="rates: cancelling pole pairs or entire functions",
    )
    p.add_argument(
        "--exact-cancellation",
        action="store_true",
        help="rates: scale residues so the unprobed integral cancels exactly",
    )
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("table", "csv"), help="output format")
    return p


def _range(text: str, name: str) -> tuple[str, str]:
    parts = text.split("..")
    if len(parts) != 2:
        raise UsageError(f"{name} must look like START..STOP, got {text!r}")
    return parts[0], parts[1]


def _resolve(args) -> argparse.Namespace:
    if args.mode and args.mode_flag and args.mode != args.mode_flag:
        raise UsageError("conflicting modes")
    args.mode = args.mode or args.mode_flag
    if args.mode is None:
        raise UsageError("a mode is required: " + ", ".join(MODES))
    if args.mode in ("test", "bound", "sweep-z0", "sweep-n") and not args.expr:
        raise UsageError(f"--expr is required for {args.mode}")
    if args.mode == "test" and args.radius is None:
        raise UsageError("--radius is required for test")
    if args.radius is not None and not (args.radius > 0 and math.isfinite(args.radius)):
        raise UsageError("--radius must be positive")
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    if args.points < 4 or args.points % 2:
        raise UsageError("--points must be even and at least 4")
    if not 0 < args.epsilon < 1:
        raise UsageError("--epsilon must lie in (0, 1)")
    if not args.delta_factor > 0:
        raise UsageError("--delta-factor must be positive")
    if not args.tolerance >= 0:
        raise UsageError("--tolerance must be non-negative")
    if not args.limit > 0:
        raise UsageError("--limit must be positive")
    if args.seed < 0 or args.seeds < 1 or args.trials < 0 or args.jobs < 1:
        raise UsageError("--seed, --seeds, --trials and --jobs must be non-negative")
    if args.grid_count < 1 or args.n_count < 1:
        raise UsageError("grid counts must be positive")
    try:
        args.z0 = parse_complex(args.z0)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    args.format = args.format or ("csv" if args.mode in CSV_BY_DEFAULT else "table")
    return args


def _pole_config(args) -> PoleTestConfig:
    return PoleTestConfig(
        samples=args.samples,
        n_points=args.points,
        epsilon=args.epsilon,
        rng_seed=args.seed,
        delta_factor=args.delta_factor,
    )


def _search_config(args) -> SearchConfig:
    return SearchConfig(
        limit=args.limit,
        tolerance=args.tolerance,
        pole_test=_pole_config(args),
        rng_seed=args.seed,
    )


def _write_table(out, fields: Sequence[str], rows: Iterable[dict]) -> None:
    rows = list(rows)
    widths = [max([len(f)] + [len(str(r[f])) for r in rows]) for f in fields]
    print("  ".join(f.ljust(w) for f, w in zip(fields, widths)), file=out)
    print("  ".join("-" * w for w in widths), file=out)
    for r in rows:
        print("  ".join(str(r[f]).ljust(w) for f, w in zip(fields, widths)), file=out)


def _emit(out, fmt: str, fields: Sequence[str], rows: Iterable[dict]) -> None:
    if fmt == "csv":
        write_csv(out, fields, rows)
    else:
        _write_table(out, fields, rows)


def _g(x: float) -> str:
    return f"{x:.6g}"


def _run_test(args, out) -> None:
    f = AnalyticFunction.from_expression(args.expr)
    outcome = test_contour(f, Contour(args.z0, args.radius), _pole_config(args))
    rows = [
        {
            "sample": i + 1,
            "k": format_complex(s.k),
            "deviation": repr(s.deviation),
            "delta": repr(s.delta),
        }
        for i, s in enumerate(outcome.per_sample)
    ]
    if args.format == "csv":
        for r in rows:
            r.update(threshold=repr(outcome.threshold), verdict=str(outcome.verdict))
        write_csv(out, ("sample", "k", "deviation", "delta", "threshold", "verdict"), rows)
        return
    print(f"function:      {f.name}", file=out)
    print(f"contour:       |z - ({format_complex(args.z0)})| = {args.radius:g}", file=out)
    print(f"verdict:       {outcome.verdict}", file=out)
    print(f"max deviation: {_g(outcome.max_deviation)}", file=out)
    print(f"threshold T:   {_g(outcome.threshold)}", file=out)
    if outcome.failed_node is not None:
        print(f"not finite at node {outcome.failed_node}", file=out)
    if rows:
        print(file=out)
        _write_table(out, ("sample", "k", "deviation", "delta"), rows)


def _run_bound(args, out) -> None:
    f = AnalyticFunction.from_expression(args.expr)
    b = search_radius(f, args.z0, _search_config(args))
    if args.format == "csv":
        row = {
            "lower": repr(b.lower),
            "upper": repr(b.upper),
            "status": str(b.status),
            "iterations": b.iterations,
        }
        write_csv(out, ("lower", "upper", "status", "iterations"), [row])
        return
    if b.status is SearchStatus.NO_POLE_WITHIN_LIMIT:
        print("no pole within limit; bounds (0, inf)", file=out)
    else:
        print(f"bounds ({_g(b.lower)}, {_g(b.upper)}); status {b.status}", file=out)
    print(file=out)
    _write_table(
        out,
        ("step", "phase", "radius", "verdict"),
        [
            {"step": i + 1, "phase": e.phase, "radius": repr(e.radius), "verdict": str(e.verdict)}
            for i, e in enumerate(b.transcript)
        ],
    )


def _run_corpus(args, out) -> None:
    rows = (r.csv_row() for r in run_corpus(_search_config(args), CORPUS, args.jobs))
    _emit(out, args.format, CORPUS_FIELDS, rows)


def _run_sweep_z0(args, out) -> None:
    f = AnalyticFunction.from_expression(args.expr)
    start, stop = (parse_complex(s) for s in _range(args.z0_grid, "--z0-grid"))
    centers = [complex(c) for c in np.linspace(start, stop, args.grid_count)]
    items = sweep_z0(f, centers, _search_config(args), jobs=args.jobs)
    _emit(out, args.format, SWEEP_Z0_FIELDS, sweep_z0_rows(items))


def _run_sweep_n(args, out) -> None:
    f = AnalyticFunction.from_expression(args.expr)
    start, stop = (float(s) for s in _range(args.n_grid, "--n-grid"))
    grid = log_grid(start, stop, args.n_count)
    items = sweep_n(f, args.z0, grid, _search_config(args), seeds=args.seeds, jobs=args.jobs)
    _emit(out, args.format, SWEEP_N_FIELDS, sweep_n_rows(items))


def _run_rates(args, out) -> None:
    radius = args.radius or 1.0
    if args.rate_kind == "false-negative":
        family = CancellingPairFamily(args.z0, radius, exact=args.exact_cancellation)
        report = measure_rates(family, _pole_config(args), args.trials, args.seed)
    else:
        family = EntireFamily(args.z0, radius)
        report = measure_false_positive_rate(family, _pole_config(args), args.trials, args.seed)
    rows = []
    if not report.empty:
        rows.append(
            {
                "predicted": "" if math.isnan(report.predicted) else repr(report.predicted),
                "measured": repr(report.measured),
                "trials": report.trials,
                "stderr": repr(report.standard_error),
            }
        )
    _emit(out, args.format, RATES_FIELDS, rows)


RUNNERS = {
    "test": _run_test,
    "bound": _run_bound,
    "corpus": _run_corpus,
    "sweep-z0": _run_sweep_z0,
    "sweep-n": _run_sweep_n,
    "rates": _run_rates,
}


@contextmanager
def _open_output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    try:
        args = _resolve(build_parser().parse_args(argv))
    except UsageError as exc:
        print(f"convbound: error: {exc}", file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE

    try:
        if stdout is not None and args.out is None:
            RUNNERS[args.mode](args, stdout)
        else:
            with _open_output(args.out) as out:
                RUNNERS[args.mode](args, out)
    except (UsageError, ValueError) as exc:  # includes ExpressionError
        print(f"convbound: error: {exc}", file=stderr)
        return EXIT_USAGE
    except (CenterNotFinite, EvaluationFailed) as exc:
        print(f"convbound: evaluation error: {exc}", file=stderr)
        return EXIT_EVALUATION
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

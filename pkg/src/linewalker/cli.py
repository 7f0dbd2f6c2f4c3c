"""Command-line harness.

``linewalker run`` runs one algorithm on a benchmark or an external oracle;
``linewalker suite`` sweeps benchmarks x algorithms x budgets. Exit status is
0 on success, 1 on usage errors and 2 when a run failed.
"""

from __future__ import annotations

import argparse
import filecmp
import logging
import shlex
import shutil
import sys
import tempfile
from pathlib import Path

from .artifacts import (
    FitTable,
    TraceRecord,
    dumps_table_csv,
    write_fit_csv,
    write_suite_csv,
    write_trace,
)
from .drivers import ALGORITHMS, RunConfig, RunError
from .grid import build_grid
from .metrics import truth_vector
from .objectives import REGISTRY, get_benchmark
from .oracle import ExternalOracle, OracleError
from .suite import (
    DEFAULT_ALGORITHMS,
    DEFAULT_BUDGETS,
    build_instances,
    evaluate_trace,
    run_suite,
    suite_config_echo,
    summarize,
)

log = logging.getLogger("linewalker")

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None


def _names(text: str) -> list[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def _add_common(p: argparse.ArgumentParser) -> None:
    d = RunConfig()
    p.add_argument("--n", type=int, default=None, help="grid points (default 5000; ackley 10000)")
    p.add_argument("--alpha", type=float, default=d.alpha, help="first-difference weight")
    p.add_argument("--mu", type=float, default=d.mu, help="second-difference weight")
    p.add_argument("--emin", type=float, default=d.e_min, help="fit-change tolerance (hunter)")
    p.add_argument("--theta", type=float, default=d.theta, help="around-the-bend band, fraction of fit range")
    p.add_argument("--aspiration-radius", choices=("short", "long"), default=d.aspiration_radius)
    p.add_argument("--out", type=Path, default=None, help="output directory")
    p.add_argument("--seedless", action="store_true", help="run twice and require byte-identical artifacts")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="linewalker", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run one instance")
    run.add_argument("--algo", choices=sorted(ALGORITHMS), default="full")
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--fn", help=f"benchmark name ({', '.join(REGISTRY)})")
    src.add_argument("--oracle", help="command of an external objective process")
    run.add_argument("--dim", type=int, help="oracle dimension")
    run.add_argument("--from", dest="x_from", type=_floats, help="segment start, comma-separated")
    run.add_argument("--to", dest="x_to", type=_floats, help="segment end, comma-separated")
    run.add_argument("--budget", type=int, default=50, help="total evaluations (a cap for hunter)")
    run.add_argument("--snapshots", action="store_true", help="write the fit of every iteration")
    _add_common(run)

    suite = sub.add_parser("suite", help="run the benchmark sweep")
    suite.add_argument("--only", type=_names, default=None, help="comma-separated function names")
    suite.add_argument("--budgets", type=_ints, default=list(DEFAULT_BUDGETS))
    suite.add_argument("--algos", type=_names, default=list(DEFAULT_ALGORITHMS),
                       help=f"comma-separated subset of {','.join(sorted(ALGORITHMS))}")
    suite.add_argument("--workers", type=int, default=1)
    _add_common(suite)
    return parser


def _base_config(args, budget: int, n: int) -> RunConfig:
    try:
        return RunConfig(
            e_max_total=budget, n_points=n, alpha=args.alpha, mu=args.mu, e_min=args.emin,
            theta=args.theta, aspiration_radius=args.aspiration_radius,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _fmt_x(x) -> str:
    return ",".join(f"{v:.6g}" for v in x)


def do_run(args, out: Path) -> int:
    if args.fn is not None:
        if args.x_from or args.x_to or args.dim:
            raise UsageError("--from/--to/--dim only apply to --oracle")
        try:
            fn = get_benchmark(args.fn)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        objective, x_start, x_end = fn, fn.lower, fn.upper
        n = args.n or fn.n_points(RunConfig().n_points)
        stem = f"{fn.name}_{args.algo}_b{args.budget}"
        meta = {"function": fn.name, "budget": args.budget}
    else:
        if args.dim is None or args.x_from is None or args.x_to is None:
            raise UsageError("--oracle needs --dim, --from and --to")
        if not len(args.x_from) == len(args.x_to) == args.dim:
            raise UsageError(f"--from and --to need {args.dim} coordinates each")
        fn = None
        x_start, x_end = args.x_from, args.x_to
        n = args.n or RunConfig().n_points
        stem = f"oracle_{args.algo}_b{args.budget}"
        meta = {"oracle": args.oracle, "budget": args.budget}
    config = _base_config(args, args.budget, n).replace(snapshots=args.snapshots)
    try:
        build_grid(x_start, x_end, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    out.mkdir(parents=True, exist_ok=True)
    oracle = None
    try:
        if fn is None:
            oracle = objective = ExternalOracle(shlex.split(args.oracle), args.dim)
        trace = ALGORITHMS[args.algo](objective, x_start, x_end, config)
    except (RunError, OracleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        partial = getattr(exc, "trace", None)
        if partial is not None and partial.evaluations:
            write_trace(out / f"{stem}.partial.json", TraceRecord.from_trace(partial, meta))
        return EXIT_FAILED
    finally:
        if oracle is not None:
            oracle.close()

    solved = score = truth = None
    if fn is not None:
        solved, score = evaluate_trace(trace, fn.name)
        truth = truth_vector(fn, trace.grid)
    record = TraceRecord.from_trace(trace, meta, solved, score)
    write_trace(out / f"{stem}.trace.json", record)
    write_fit_csv(out / f"{stem}.fit.csv", FitTable.from_fit(trace.final_fit, trace, truth, meta))
    if args.snapshots:
        snap_dir = out / f"{stem}.snapshots"
        snap_dir.mkdir(exist_ok=True)
        for fit in trace.fit_snapshots:
            write_fit_csv(snap_dir / f"iter_{fit.iteration:04d}.csv", FitTable.from_fit(fit, trace, truth, meta))

    b = trace.best
    print(
        f"algo={args.algo} evals={trace.n_evaluations} iterations={trace.iterations} "
        f"best_index={b.index} best_x={_fmt_x(b.x)} best_f={b.value:.6g} "
        f"solved={'n/a' if solved is None else solved} "
        f"tase={'n/a' if score is None else f'{score:.4g}'}"
    )
    return EXIT_OK


def do_suite(args, out: Path) -> int:
    try:
        instances = build_instances(args.only, args.algos, args.budgets)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if not instances:
        raise UsageError("empty suite")
    base = _base_config(args, max(args.budgets), args.n or RunConfig().n_points)
    results = run_suite(instances, base, n_points=args.n, workers=args.workers)

    out.mkdir(parents=True, exist_ok=True)
    trace_dir = out / "traces"
    trace_dir.mkdir(exist_ok=True)
    for res in results:
        if res.record is not None:
            r = res.row
            write_trace(trace_dir / f"{r.function}_{r.algorithm}_b{r.budget}.json", res.record)
    rows = [res.row for res in results]
    echo = suite_config_echo(base, instances, args.n)
    write_suite_csv(out / "suite.csv", rows, echo)

    frac, mt = summarize(rows)
    budgets = sorted({r.budget for r in rows})
    header = ["algorithm", *map(str, budgets)]
    for name, table in (("fraction_solved", frac), ("mean_tase", mt)):
        body = [[a, *(table[a].get(b, float("nan")) for b in budgets)] for a in table]
        (out / f"{name}.csv").write_text(dumps_table_csv(header, body, echo))
        print(name)
        print("  " + " ".join(f"{h:>10}" for h in header))
        for row in body:
            print("  " + f"{row[0]:>10} " + " ".join(f"{v:10.4f}" for v in row[1:]))

    failed = [r for r in rows if r.error]
    for r in failed:
        print(f"error: {r.function}/{r.algorithm}/{r.budget}: {r.error}", file=sys.stderr)
    return EXIT_FAILED if failed else EXIT_OK


def _same_tree(a: Path, b: Path) -> list[str]:
    """Relative paths that differ between two output trees."""
    fa = {p.relative_to(a) for p in a.rglob("*") if p.is_file()}
    fb = {p.relative_to(b) for p in b.rglob("*") if p.is_file()}
    diff = sorted(str(p) for p in fa ^ fb)
    diff += sorted(str(p) for p in fa & fb if not filecmp.cmp(a / p, b / p, shallow=False))
    return diff


def _glue_vector_args(argv: list[str]) -> list[str]:
    # "--from -2,-7" would otherwise be read as an unknown option "-2,-7"
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--from", "--to"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_vector_args(sys.argv[1:] if argv is None else list(argv)))
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = do_run if args.command == "run" else do_suite
    out = args.out or Path("out" if args.command == "run" else "suite_out")
    try:
        if not args.seedless:
            return handler(args, out)
        with tempfile.TemporaryDirectory() as tmp:
            first, second = Path(tmp, "first"), Path(tmp, "second")
            status = handler(args, first)
            status = max(status, handler(args, second))
            diff = _same_tree(first, second)
            shutil.copytree(first, out, dirs_exist_ok=True)
        if diff:
            print(f"error: rerun differs in {', '.join(diff)}", file=sys.stderr)
            return EXIT_FAILED
        print("seedless: rerun produced byte-identical artifacts")
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"linewalker: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return status


if __name__ == "__main__":
    sys.exit(main())

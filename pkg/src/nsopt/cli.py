"""``nsopt`` command line: solve, bench, check-grad, problems.

Exit codes: 0 converged / ok, 1 usage error, 2 iteration budget or
stagnation, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import bench
from .bfgs import bfgs_run
from .core import Reason, SolverOptions
from .gradsamp import GsaOptions, gsa_run
from .hybrid import hanso_run
from .problems import PROBLEM_NAMES, all_problems, check_gradient, get_problem

GRAD_TOL = 1e-4

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_FAIL = 0, 1, 2, 3
_EXIT_FOR = {
    Reason.OPTIMAL: EXIT_OK,
    Reason.MAX_ITER: EXIT_BUDGET,
    Reason.STAGNATION: EXIT_BUDGET,
    Reason.LINESEARCH_FAIL: EXIT_FAIL,
    Reason.EVAL_ERROR: EXIT_FAIL,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _problem(name):
    try:
        return get_problem(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _split_names(text):
    return [s.strip() for s in text.split(",") if s.strip()]


def _solver_options(args, **extra):
    try:
        return SolverOptions(
            normtol=args.normtol, evaldist=args.evaldist, maxit=args.maxit, **extra
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_solve(args) -> int:
    obj = _problem(args.problem)
    n = obj.dimension
    if args.start is not None:
        try:
            x0 = np.array([float(v) for v in args.start.replace(",", " ").split()])
        except ValueError:
            raise UsageError(f"--start: cannot parse {args.start!r}") from None
    elif args.start_file is not None:
        try:
            x0 = np.loadtxt(args.start_file, dtype=float, ndmin=1).ravel()
        except (OSError, ValueError) as exc:
            raise UsageError(f"--start-file: {exc}") from None
    else:
        x0 = bench.generate_starts(n, 1, args.seed, obj.name)[0]
    if x0.shape != (n,):
        raise UsageError(f"{obj.name} needs a start of length {n}, got {x0.size}")

    opts = _solver_options(args, rng_seed=args.seed, stagnation=not args.no_stagnation)
    rng = bench.stream(args.seed, obj.name, 0, bench._SAMPLING_STREAM)
    if args.solver == "bfgs":
        res = bfgs_run(obj, x0, opts)
    elif args.solver == "gsa":
        res = gsa_run(obj, x0, opts, GsaOptions(), rng)
    else:
        res = hanso_run(obj, x0, opts, GsaOptions(), rng)
    out = {"problem": obj.name, "solver": args.solver, **res.to_dict()}
    if res.message:
        out["message"] = res.message
    print(json.dumps(out))
    return _EXIT_FOR[res.reason]


def cmd_bench(args) -> int:
    problems = _split_names(args.problems) if args.problems else list(PROBLEM_NAMES)
    try:
        spec = bench.BenchmarkSpec(
            problems=problems,
            n_starts=args.starts,
            master_seed=args.seed,
            solvers=_split_names(args.solvers),
            success_rtol=args.rtol,
            success_atol=args.atol,
            options=_solver_options(args, stagnation=False),
            starts_dir=args.starts_dir,
        )
    except (ValueError, KeyError) as exc:
        raise UsageError(exc.args[0]) from None
    t0 = time.perf_counter()
    report = bench.run_benchmark(spec)
    paths = report.write(args.out_dir, markdown=not args.no_markdown)
    for name, msg in report.errors.items():
        print(f"error: {name}: {msg}", file=sys.stderr)
    print(report.total_line())
    print(f"wrote {', '.join(str(p) for p in paths)} in {time.perf_counter() - t0:.1f}s",
          file=sys.stderr)
    return EXIT_OK


def cmd_check_grad(args) -> int:
    if args.all:
        objs = all_problems()
    elif args.problem:
        objs = [_problem(p) for p in args.problem]
    else:
        raise UsageError("check-grad: give --problem NAME or --all")
    if args.points < 1:
        raise UsageError("--points must be positive")
    worst_all = 0.0
    for obj in objs:
        worst = 0.0
        for i in range(args.points):
            rng = bench.stream(args.seed, obj.name, i)
            x = rng.standard_normal(obj.dimension)
            x += 1e-7 * rng.standard_normal(obj.dimension)
            worst = max(worst, check_gradient(obj, x, args.h))
        worst_all = max(worst_all, worst)
        flag = "ok" if worst <= GRAD_TOL else "FAIL"
        print(f"{obj.name:14s} {worst:.3e} {flag}")
    return EXIT_OK if worst_all <= GRAD_TOL else EXIT_FAIL


def cmd_problems(args) -> int:
    rows = [(p.name, p.dimension, p.metadata.f_star, p.metadata.convex) for p in all_problems()]
    if args.format == "csv":
        print("name,n,f_star,convex")
        for name, n, fs, cv in rows:
            print(f"{name},{n},{fs!r},{'convex' if cv else 'nonconvex'}")
    elif args.format == "json":
        print(json.dumps([{"name": a, "n": b, "f_star": c, "convex": d} for a, b, c, d in rows]))
    else:
        print(f"{'Problem':14s} {'n':>3s} {'f*':>16s}  Convexity")
        for name, n, fs, cv in rows:
            print(f"{name:14s} {n:3d} {fs!r:>16s}  {'Convex' if cv else 'Nonconvex'}")
    return EXIT_OK


def _add_solver_flags(p):
    p.add_argument("--maxit", type=int, default=1000)
    p.add_argument("--normtol", type=float, default=1e-6)
    p.add_argument("--evaldist", type=float, default=1e-4)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nsopt", description="Nonsmooth BFGS / gradient sampling toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one problem from one start")
    p.add_argument("--problem", required=True)
    p.add_argument("--solver", choices=["hanso", "bfgs", "gsa"], default="hanso")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--start", help='inline point, e.g. "1 1"')
    g.add_argument("--start-file", help="file holding one point")
    p.add_argument("--seed", type=int, default=0,
                   help="seeds the random start (when no start is given) and the sampling")
    p.add_argument("--no-stagnation", action="store_true", help="disable the stagnation exit")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="multi-start benchmark")
    p.add_argument("--problems", help="comma-separated names (default: all)")
    p.add_argument("--starts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--solvers", default="hanso,bfgs")
    p.add_argument("--rtol", type=float, default=1e-3)
    p.add_argument("--atol", type=float, default=1e-3)
    p.add_argument("--out-dir", default="bench_out")
    p.add_argument("--starts-dir")
    p.add_argument("--no-markdown", action="store_true")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("check-grad", help="finite-difference gradient check")
    p.add_argument("--problem", action="append")
    p.add_argument("--all", action="store_true")
    p.add_argument("--points", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--h", type=float, default=1e-6)
    p.set_defaults(func=cmd_check_grad)

    p = sub.add_parser("problems", help="list the test problems")
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.set_defaults(func=cmd_problems)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

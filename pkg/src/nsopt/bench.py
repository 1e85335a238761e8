"""Multi-start benchmark: seeded starts, success classification, aggregation
and CSV / Markdown output."""

from __future__ import annotations

import csv
import io
import math
import os
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .bfgs import bfgs_run
from .core import ProblemMeta, SolverOptions
from .gradsamp import GsaOptions, gsa_run
from .hybrid import hanso_run
from .problems import PROBLEM_NAMES, canonical_name, get_problem

SOLVERS = ("HANSO", "BFGS", "GSA")
RUN_HEADER = ["problem", "solver", "start", "f_final", "f_star", "success",
              "reason", "n_iter", "n_fev", "n_gev"]
AGG_HEADER = ["problem", "solver", "success_count", "avg_iter_all", "avg_fev_all",
              "avg_gev_all", "avg_iter_succ", "avg_fev_succ", "avg_gev_succ"]

# stream tags keep start points and sampling draws on disjoint counters
_STARTS_STREAM = 0
_SAMPLING_STREAM = 1


def _key(seed: int, key: str):
    return np.array([seed & 0xFFFFFFFFFFFFFFFF, zlib.crc32(key.encode("utf-8"))], dtype=np.uint64)


def stream(seed: int, key: str, index: int, tag: int = _STARTS_STREAM) -> np.random.Generator:
    """Counter-based generator for ``(seed, key, index)``. Each index gets
    its own block of the Philox counter space, so streams never overlap."""
    counter = np.array([0, 0, tag, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(counter=counter, key=_key(seed, key)))


def generate_starts(n: int, count: int, seed: int, key: str = "") -> np.ndarray:
    """``count`` standard-normal points in R^n, row ``i`` drawn from the stream
    keyed by ``(seed, key, i)``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    return np.array([stream(seed, key, i).standard_normal(n) for i in range(count)])


def classify_success(f_final: float, meta: ProblemMeta, rtol: float = 1e-3, atol: float = 1e-3) -> bool:
    if not math.isfinite(meta.f_star):
        raise ValueError("f_star must be finite")
    if not math.isfinite(f_final):
        return False
    return f_final <= meta.f_star + atol + rtol * abs(meta.f_star)


def read_starts(path, n: int, count: int) -> np.ndarray:
    """Parse a starts file: ``count`` lines of ``n`` numbers each."""
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if len(lines) != count:
        raise ValueError(f"{path}: expected {count} lines, found {len(lines)}")
    pts = []
    for i, ln in enumerate(lines, 1):
        vals = [float(v) for v in ln.split()]
        if len(vals) != n:
            raise ValueError(f"{path}:{i}: expected {n} numbers, found {len(vals)}")
        pts.append(vals)
    out = np.array(pts)
    if not np.all(np.isfinite(out)):
        raise ValueError(f"{path}: non-finite entry")
    return out


def starts_file(starts_dir, name: str) -> Optional[Path]:
    for stem in (name, name.replace(" ", "_")):
        p = Path(starts_dir) / f"{stem}.starts"
        if p.exists():
            return p
    return None


@dataclass(frozen=True)
class BenchmarkSpec:
    problems: Sequence[str] = PROBLEM_NAMES
    n_starts: int = 20
    master_seed: int = 0
    solvers: Sequence[str] = ("HANSO", "BFGS")
    success_rtol: float = 1e-3
    success_atol: float = 1e-3
    options: SolverOptions = field(default_factory=lambda: SolverOptions(stagnation=False))
    gsa_options: GsaOptions = field(default_factory=GsaOptions)
    starts_dir: Optional[str] = None

    def __post_init__(self):
        if self.n_starts < 1:
            raise ValueError("n_starts must be at least 1")
        if not (self.success_rtol > 0 and self.success_atol > 0):
            raise ValueError("success tolerances must be positive")
        solvers = tuple(s.upper() for s in self.solvers)
        bad = [s for s in solvers if s not in SOLVERS]
        if bad or not solvers:
            raise ValueError(f"unknown solver(s) {bad}; choose from {SOLVERS}")
        object.__setattr__(self, "solvers", tuple(dict.fromkeys(solvers)))
        object.__setattr__(self, "problems", tuple(canonical_name(p) for p in self.problems))


@dataclass
class RunRow:
    problem: str
    solver: str
    start: int
    f_final: float
    f_star: float
    success: bool
    reason: str
    n_iter: int
    n_fev: int
    n_gev: int
    # hybrid only: whether its BFGS phase ended Optimal
    bfgs_optimal: Optional[bool] = None


@dataclass
class Aggregate:
    problem: str
    solver: str
    n_runs: int
    success_count: int
    avg_all: tuple
    avg_success: Optional[tuple]


def _mean(rows, attr):
    return sum(getattr(r, attr) for r in rows) / len(rows)


def _triple(rows):
    return (_mean(rows, "n_iter"), _mean(rows, "n_fev"), _mean(rows, "n_gev"))


def aggregate(rows: Sequence[RunRow], problem: str, solver: str) -> Aggregate:
    mine = [r for r in rows if r.problem == problem and r.solver == solver]
    succ = [r for r in mine if r.success]
    return Aggregate(
        problem, solver, len(mine), len(succ),
        _triple(mine) if mine else (math.nan,) * 3,
        _triple(succ) if succ else None,
    )


def _fmt(v: float) -> str:
    return repr(float(v))


@dataclass
class BenchmarkReport:
    spec: BenchmarkSpec
    rows: list
    aggregates: list
    errors: dict

    def totals(self) -> dict:
        return {s: sum(a.success_count for a in self.aggregates if a.solver == s)
                for s in self.spec.solvers}

    def rescued(self) -> dict:
        """Per problem, starts where the hybrid succeeded and BFGS alone did not."""
        bfgs = {(r.problem, r.start): r.success for r in self.rows if r.solver == "BFGS"}
        out = {}
        for r in self.rows:
            if r.solver == "HANSO" and r.success and not bfgs.get((r.problem, r.start), True):
                out[r.problem] = out.get(r.problem, 0) + 1
        return out

    def total_line(self) -> str:
        runs = {s: sum(a.n_runs for a in self.aggregates if a.solver == s) for s in self.spec.solvers}
        parts = [f"{s} {c}/{runs[s]}" for s, c in self.totals().items()]
        return "TOTAL " + " ".join(parts)

    def runs_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(RUN_HEADER)
        for r in self.rows:
            w.writerow([r.problem, r.solver, r.start, _fmt(r.f_final), _fmt(r.f_star),
                        int(r.success), r.reason, r.n_iter, r.n_fev, r.n_gev])
        return buf.getvalue()

    def summary_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(AGG_HEADER)
        for a in self.aggregates:
            succ = [_fmt(v) for v in a.avg_success] if a.avg_success else ["", "", ""]
            w.writerow([a.problem, a.solver, a.success_count, *map(_fmt, a.avg_all), *succ])
        return buf.getvalue()

    def to_markdown(self) -> str:
        solvers = self.spec.solvers
        by = {(a.problem, a.solver): a for a in self.aggregates}
        problems = [p for p in self.spec.problems if p not in self.errors]
        rescued = self.rescued() if {"HANSO", "BFGS"} <= set(solvers) else None
        extra = [" rescued by sampling"] if rescued is not None else []
        out = ["## Successful runs", ""]
        out.append("| Problem | " + " | ".join(list(solvers) + extra) + " |")
        out.append("|---|" + "---|" * (len(solvers) + len(extra)))
        for p in problems:
            cols = [str(by[p, s].success_count) for s in solvers]
            if rescued is not None:
                cols.append(str(rescued.get(p, 0)))
            out.append(f"| {p} | " + " | ".join(cols) + " |")
        totals = self.totals()
        cols = [str(totals[s]) for s in solvers]
        if rescued is not None:
            cols.append(str(sum(rescued.values())))
        out.append("| TOTAL | " + " | ".join(cols) + " |")

        def cells(t):
            return [f"{v:.1f}" for v in t]

        head = " | ".join(f"{s} n_iter | {s} n_fev | {s} n_gev" for s in solvers)
        out += ["", "## Average effort over all starts", "", f"| Problem | {head} |",
                "|---|" + "---|" * (3 * len(solvers))]
        for p in problems:
            row = sum((cells(by[p, s].avg_all) for s in solvers), [])
            out.append(f"| {p} | " + " | ".join(row) + " |")

        out += ["", "## Average effort over successful starts",
                "", "Problems solved from some but not all starts.", "",
                f"| Problem | {head} |", "|---|" + "---|" * (3 * len(solvers))]
        for p in problems:
            aggs = [by[p, s] for s in solvers]
            if not any(0 < a.success_count < a.n_runs for a in aggs):
                continue
            row = sum((cells(a.avg_success) if a.avg_success else ["-"] * 3 for a in aggs), [])
            out.append(f"| {p} | " + " | ".join(row) + " |")
        if self.errors:
            out += ["", "## Errors", ""]
            out += [f"- {p}: {msg}" for p, msg in self.errors.items()]
        return "\n".join(out) + "\n"

    def write(self, out_dir, markdown: bool = True) -> list:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = [out / "runs.csv", out / "summary.csv"]
        written[0].write_text(self.runs_csv())
        written[1].write_text(self.summary_csv())
        if markdown:
            written.append(out / "tables.md")
            written[-1].write_text(self.to_markdown())
        return written


def _row(name, meta, solver, i, res, spec, bfgs_optimal=None):
    return RunRow(
        name, solver, i, float(res.f_final), meta.f_star,
        classify_success(res.f_final, meta, spec.success_rtol, spec.success_atol),
        res.reason.value, *res.counters.as_tuple(), bfgs_optimal=bfgs_optimal,
    )


def _error_row(name, meta, solver, i, exc):
    return RunRow(name, solver, i, math.nan, meta.f_star, False,
                  f"Error:{type(exc).__name__}", 0, 0, 0)


def run_problem(spec: BenchmarkSpec, name: str):
    """All runs for one problem. Returns ``(rows, error message or None)``."""
    try:
        obj = get_problem(name)
        meta = obj.metadata
        path = starts_file(spec.starts_dir, name) if spec.starts_dir else None
        if path is not None:
            starts = read_starts(path, obj.dimension, spec.n_starts)
        else:
            starts = generate_starts(obj.dimension, spec.n_starts, spec.master_seed, name)
    except Exception as exc:  # noqa: BLE001 - isolate per problem
        return [], f"{type(exc).__name__}: {exc}"

    rows = []
    for i, x0 in enumerate(starts):
        per_start = {}
        hybrid = None
        if "HANSO" in spec.solvers:
            try:
                rng = stream(spec.master_seed, name, i, _SAMPLING_STREAM)
                hybrid = hanso_run(obj, x0, spec.options, spec.gsa_options, rng)
                opt = hybrid.extra["bfgs"].reason.value == "Optimal"
                per_start["HANSO"] = _row(name, meta, "HANSO", i, hybrid, spec, opt)
            except Exception as exc:  # noqa: BLE001
                per_start["HANSO"] = _error_row(name, meta, "HANSO", i, exc)
        if "BFGS" in spec.solvers:
            try:
                # bfgs_run is deterministic, so the hybrid's first phase is the same run
                res = hybrid.extra["bfgs"] if hybrid is not None else bfgs_run(obj, x0, spec.options)
                per_start["BFGS"] = _row(name, meta, "BFGS", i, res, spec)
            except Exception as exc:  # noqa: BLE001
                per_start["BFGS"] = _error_row(name, meta, "BFGS", i, exc)
        if "GSA" in spec.solvers:
            try:
                rng = stream(spec.master_seed, name, i, _SAMPLING_STREAM)
                res = gsa_run(obj, x0, spec.options, spec.gsa_options, rng)
                per_start["GSA"] = _row(name, meta, "GSA", i, res, spec)
            except Exception as exc:  # noqa: BLE001
                per_start["GSA"] = _error_row(name, meta, "GSA", i, exc)
        rows.extend(per_start[s] for s in spec.solvers)
    return rows, None


def worker_count() -> int:
    raw = os.environ.get("NSOPT_THREADS", "").strip()
    n = int(raw) if raw else 0
    if n < 0:
        raise ValueError("NSOPT_THREADS must be non-negative")
    return n or (os.cpu_count() or 1)


def run_benchmark(spec: BenchmarkSpec, workers: Optional[int] = None) -> BenchmarkReport:
    """Run every (problem, start, solver) of ``spec``.

    Problems are farmed out to a process pool when more than one worker is
    available; results are collected in problem order so the output does not
    depend on scheduling.
    """
    workers = worker_count() if workers is None else max(1, workers)
    names = list(spec.problems)
    if workers > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(names))) as pool:
            results = list(pool.map(run_problem, [spec] * len(names), names))
    else:
        results = [run_problem(spec, n) for n in names]

    rows, errors = [], {}
    for name, (r, err) in zip(names, results):
        if err is not None:
            errors[name] = err
        rows.extend(r)
    aggs = [aggregate(rows, p, s) for p in names if p not in errors for s in spec.solvers]
    return BenchmarkReport(spec, rows, aggs, errors)


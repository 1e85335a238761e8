"""Acceptance checks. Each test carries a ``criterion`` mark; conftest prints
one PASS/FAIL line per criterion at the end of the run."""

import csv
import io
import time

import numpy as np
import pytest

from nsopt.bench import BenchmarkSpec, run_benchmark
from nsopt.bfgs import bfgs_run
from nsopt.cli import main
from nsopt.core import SolverOptions
from nsopt.hybrid import hanso_run
from nsopt.minnorm import min_norm_in_hull
from nsopt.problems import get_problem
from helpers import quadratic, wolfe_battery
from oracles import brute_force_min_norm

criterion = pytest.mark.criterion

# name, n, optimal value, convex
REFERENCE_TABLE = [
    ("CB2", 2, "1.9522245", True),
    ("WF", 2, "0", False),
    ("SPIRAL", 2, "0", False),
    ("Rosenbrock", 2, "0", False),
    ("Crescent", 2, "0", False),
    ("CB3", 2, "2", True),
    ("DEM", 2, "-3", True),
    ("QL", 2, "7.2", True),
    ("LQ", 2, "-1.4142136", True),
    ("Mifflin 1", 2, "-1", True),
    ("Mifflin 2", 2, "-1", False),
    ("Wolfe", 2, "-8", True),
    ("EVD52", 3, "3.5997193", False),
    ("Rosen_Suzuki", 4, "-44", True),
    ("Polak6", 4, "-44", True),
    ("Davidon 2", 4, "115.70644", True),
    ("OET5", 4, "0.26359735e-2", False),
    ("OET6", 4, "0.20160753e-2", False),
    ("Shor", 5, "22.600162", True),
    ("El-Attar", 6, "0.5598131", False),
    ("Wong 1", 7, "680.63006", True),
    ("Wong 2", 10, "24.306209", True),
    ("Polak 2", 10, "54.598150", True),
    ("Maxquad", 10, "-0.8414083", True),
    ("Gill", 10, "9.7857721", False),
    ("Polak 3", 11, "3.70348", True),
    ("Osborne 2", 11, "0.48027401e-1", False),
    ("Steiner 2", 12, "16.703838", False),
    ("Shell Dual", 15, "32.348679", False),
    ("Wong 3", 20, "93.90525", True),
    ("Watson", 20, "0.14743027e-7", True),
    ("Maxq", 20, "0", True),
    ("Maxl", 20, "0", True),
    ("Gofflin", 50, "0", True),
    ("MXHILB", 50, "0", True),
    ("L1HILB", 50, "0", True),
]

SOLVED_BY_BOTH = ["CB2", "Rosenbrock", "QL", "LQ", "Wolfe", "EVD52", "Davidon 2", "Shor",
                  "Wong 2", "Maxquad", "Maxq", "Maxl", "Gofflin", "MXHILB", "L1HILB"]


@pytest.fixture(scope="module")
def full_bench(tmp_path_factory):
    """The default benchmark (36 problems x 20 starts x 2 solvers), run twice."""
    out = []
    for tag in ("first", "second"):
        t0 = time.perf_counter()
        rep = run_benchmark(BenchmarkSpec())
        elapsed = time.perf_counter() - t0
        d = tmp_path_factory.mktemp(tag)
        rep.write(d)
        out.append((rep, elapsed, d))
    print(f"\nbenchmark wall time: {out[0][1]:.1f}s and {out[1][1]:.1f}s; {out[0][0].total_line()}")
    return out


def rows_by_solver(rep):
    by = {}
    for r in rep.rows:
        by.setdefault(r.solver, {})[r.problem, r.start] = r
    return by


@criterion(1, "gradient fidelity: check-grad --all --points 100")
def test_gradient_fidelity(capsys):
    t0 = time.perf_counter()
    code = main(["check-grad", "--all", "--points", "100"])
    elapsed = time.perf_counter() - t0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 36
    worst = max(float(line.rsplit(None, 2)[1]) for line in out)
    print(f"worst relative error {worst:.2e} in {elapsed:.1f}s")
    assert code == 0
    assert worst <= 1e-4
    assert elapsed < 60


@criterion(2, "min-norm QP matches brute force on 1000 instances")
def test_min_norm_oracle():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(1000):
        k, n = rng.integers(1, 6), rng.integers(1, 5)
        G = rng.uniform(-2, 2, (k, n))
        ref, _ = brute_force_min_norm(G)
        worst = max(worst, abs(min_norm_in_hull(G).norm - ref))
    print(f"worst |norm - oracle| = {worst:.2e}")
    assert worst <= 1e-5


@criterion(2, "min-norm QP matches brute force on 1000 instances")
def test_min_norm_examples():
    s = min_norm_in_hull([[2.0, -7.0]])
    assert s.g_star.tolist() == [2.0, -7.0] and s.lam.tolist() == [1.0]
    s = min_norm_in_hull([[3.0, 4.0], [-3.0, -4.0]])
    assert s.norm == 0.0 and s.g_star.tolist() == [0.0, 0.0]
    s = min_norm_in_hull([[1.0, 0.0], [0.0, 1.0]])
    assert s.g_star.tolist() == [0.5, 0.5] and s.lam.tolist() == [0.5, 0.5]
    assert s.norm == np.sqrt(2) / 2


@criterion(3, "weak Wolfe battery of 200: zero violations")
def test_wolfe_battery():
    successes, violations = wolfe_battery(200, seed=2024)
    print(f"{successes} successes, {violations} violations")
    assert violations == 0
    assert successes >= 190


@criterion(4, "BFGS on strongly convex quadratics: |g| <= 1e-8 within 2n+10 iterations")
@pytest.mark.parametrize("n", [2, 10, 50])
def test_smooth_quadratics(n):
    rng = np.random.default_rng(n)
    # the stopping test is pushed below the target so the run continues until |g| is measured
    opts = SolverOptions(normtol=1e-14, maxit=2 * n + 10, keep_trace=True)
    worst = 0
    for _ in range(50):
        obj, _, _ = quadratic(n, rng, cond=10 ** rng.uniform(0, 4))
        x0 = rng.standard_normal(n)
        r = bfgs_run(obj, x0, opts)
        norms = [np.linalg.norm(obj.eval(x0)[1])] + [row[3] for row in r.trace]
        hit = next((i for i, g in enumerate(norms) if g <= 1e-8), None)
        assert hit is not None, f"|g| only reached {min(norms):.2e}"
        worst = max(worst, hit)
    print(f"n={n}: worst iteration count {worst} (cap {2 * n + 10})")
    assert worst <= 2 * n + 10


@criterion(5, "15 reference-solved problems: hybrid >= 16/20 each; runtime <= 15 min")
def test_solved_problems(full_bench):
    rep, elapsed, _ = full_bench[0]
    counts = {a.problem: a.success_count for a in rep.aggregates if a.solver == "HANSO"}
    low = {p: counts[p] for p in SOLVED_BY_BOTH if counts[p] < 16}
    print("hybrid successes:", {p: counts[p] for p in SOLVED_BY_BOTH})
    print(rep.total_line())
    assert not low
    assert elapsed <= 15 * 60


@criterion(6, "hybrid dominance over BFGS on all 1440 runs")
def test_dominance(full_bench):
    rep = full_bench[0][0]
    by = rows_by_solver(rep)
    assert len(by["HANSO"]) == len(by["BFGS"]) == 720
    worse = [k for k, h in by["HANSO"].items() if not h.f_final <= by["BFGS"][k].f_final]
    assert not worse
    identical = 0
    for k, h in by["HANSO"].items():
        b = by["BFGS"][k]
        if h.bfgs_optimal:
            assert (h.f_final, h.reason, h.n_iter, h.n_fev, h.n_gev) == \
                (b.f_final, b.reason, b.n_iter, b.n_fev, b.n_gev)
            identical += 1
    print(f"{identical} of 720 pairs ended Optimal in the BFGS phase and match exactly")


@criterion(6, "hybrid dominance over BFGS on all 1440 runs")
@pytest.mark.parametrize("name", ["CB2", "Maxq", "Shor", "L1HILB"])
def test_bitwise_identity_on_optimal_bfgs(name):
    obj = get_problem(name)
    x0 = np.random.default_rng(0).standard_normal(obj.dimension)
    opts = SolverOptions(stagnation=False)
    b = bfgs_run(obj, x0, opts)
    h = hanso_run(obj, x0, opts, rng=np.random.default_rng(0))
    assert b.reason.value == "Optimal"
    assert h.x_final.tobytes() == b.x_final.tobytes()
    assert (h.f_final, h.stationarity, h.counters) == (b.f_final, b.stationarity, b.counters)


@criterion(7, "budget compliance: n_iter <= 1000, cap hits report MaxIter")
def test_budget(full_bench):
    rep = full_bench[0][0]
    assert max(r.n_iter for r in rep.rows) <= 1000
    capped = [r for r in rep.rows if r.n_iter == 1000]
    assert all(r.reason == "MaxIter" for r in capped)
    print(f"{len(capped)} runs reached the iteration cap")


@criterion(8, "determinism: repeated benchmark gives byte-identical CSVs")
def test_determinism(full_bench):
    (_, _, a), (_, _, b) = full_bench
    for name in ("runs.csv", "summary.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


@criterion(9, "problem listing matches the reference table")
def test_table_audit(capsys):
    assert main(["problems", "--format", "csv"]) == 0
    listed = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(listed) == len(REFERENCE_TABLE) == 36
    for row, (name, n, f_star, convex) in zip(listed, REFERENCE_TABLE):
        assert row["name"] == name
        assert int(row["n"]) == n
        assert float(row["f_star"]) == float(f_star)
        assert row["convex"] == ("convex" if convex else "nonconvex")

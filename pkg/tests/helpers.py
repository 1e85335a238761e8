"""Small objectives shared by the solver tests."""

import numpy as np

from nsopt.core import Counters, Objective, SolverOptions
from nsopt.linesearch import weak_wolfe_search


def half_sq(n):
    return Objective("half_sq", n, lambda x: (0.5 * float(x @ x), x.copy()))


def sq(n):
    return Objective("sq", n, lambda x: (float(x @ x), 2 * x))


def abs1(n):
    """|x_1|, kinked along the hyperplane x_1 = 0."""
    def f(x):
        g = np.zeros(n)
        g[0] = 1.0 if x[0] >= 0 else -1.0
        return abs(float(x[0])), g
    return Objective("abs1", n, f)


def l1(n):
    return Objective("l1", n, lambda x: (float(np.sum(np.abs(x))), np.where(x >= 0, 1.0, -1.0)))


def quadratic(n, rng, cond):
    """f = (x - c)' A (x - c) / 2 with eigenvalues spanning [1, cond]."""
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    ev = np.exp(rng.uniform(0, np.log(cond), n))
    ev[0], ev[-1] = 1.0, cond
    A = (Q * ev) @ Q.T
    A = 0.5 * (A + A.T)
    c = rng.standard_normal(n)

    def f(x):
        r = x - c
        Ar = A @ r
        return 0.5 * float(r @ Ar), Ar

    return Objective(f"quad{n}", n, f), A, c


def wolfe_holds(obj, x, f0, g0, d, out, opts=SolverOptions()):
    """Re-evaluate both weak Wolfe inequalities at the returned step."""
    f, g = obj.eval(np.asarray(x) + out.t * np.asarray(d))
    gtd = g0 @ d
    return f <= f0 + opts.c1 * out.t * gtd and g @ d >= opts.c2 * gtd


def restriction(kind, rng):
    """A random 1-D objective, either smooth or piecewise linear."""
    if kind == "smooth":
        a, b, c = rng.uniform(0.1, 5), rng.uniform(-3, 3), rng.uniform(0, 1)

        def f(x):
            t = x[0]
            return a * t * t + b * t + c * np.cos(3 * t), np.array([2 * a * t + b - 3 * c * np.sin(3 * t)])
    else:
        k = rng.integers(2, 6)
        slopes = np.sort(rng.uniform(-5, 5, k))
        slopes[0], slopes[-1] = -abs(slopes[0]) - 0.1, abs(slopes[-1]) + 0.1
        icpt = rng.uniform(-2, 2, k)

        def f(x):
            vals = slopes * x[0] + icpt
            i = int(np.argmax(vals))
            return float(vals[i]), np.array([slopes[i]])
    return Objective(kind, 1, f)


def wolfe_battery(count, seed):
    """Run the search on ``count`` random restrictions; return (successes, violations)."""
    rng = np.random.default_rng(seed)
    successes = violations = 0
    for i in range(count):
        obj = restriction("smooth" if i % 2 == 0 else "pl", rng)
        x = np.array([rng.uniform(-5, 5)])
        f0, g0 = obj.eval(x)
        if g0[0] == 0:
            continue
        d = np.array([-np.sign(g0[0]) * 10 ** rng.uniform(-2, 2)])
        out = weak_wolfe_search(obj, x, f0, g0, d, SolverOptions(), Counters())
        if out.ok:
            successes += 1
            violations += not wolfe_holds(obj, x, f0, g0, d, out)
    return successes, violations

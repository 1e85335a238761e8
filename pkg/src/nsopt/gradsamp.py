"""Gradient sampling.

At each iteration gradients are evaluated at ``m`` points drawn uniformly
from the ball of radius ``eps`` around the iterate. The negated smallest
vector in their convex hull (with the gradient at the iterate itself) is an
approximate eps-steepest descent direction. A short norm means the
iterate is approximately stationary at that radius, and the radius shrinks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    Counters,
    EvaluationError,
    Objective,
    Reason,
    RunResult,
    SolverOptions,
    evaluate_counted,
)
from .linesearch import weak_wolfe_search
from .minnorm import min_norm_in_hull


@dataclass(frozen=True)
class GsaOptions:
    radii: Sequence[float] = (1e-4, 1e-5, 1e-6)
    # None means 2n
    samples_per_iter: Optional[int] = None
    gsa_normtol: float = 1e-6
    maxit_per_phase: int = 100

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if not radii:
            raise ValueError("radii must be non-empty")
        if any(r <= 0 for r in radii):
            raise ValueError("radii must be positive")
        if any(b >= a for a, b in zip(radii, radii[1:])):
            raise ValueError("radii must be strictly decreasing")
        object.__setattr__(self, "radii", radii)
        if self.samples_per_iter is not None and self.samples_per_iter < 1:
            raise ValueError("samples_per_iter must be at least 1")
        if not self.gsa_normtol > 0:
            raise ValueError("gsa_normtol must be positive")
        if self.maxit_per_phase < 1:
            raise ValueError("maxit_per_phase must be at least 1")

    def m_for(self, n: int) -> int:
        return self.samples_per_iter if self.samples_per_iter is not None else 2 * n


def sample_ball(rng: np.random.Generator, x, eps: float, m: int) -> np.ndarray:
    """``m`` points uniformly distributed in the closed ball of radius
    ``eps`` about ``x``."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    u = rng.standard_normal((m, n))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    r = eps * rng.random(m) ** (1.0 / n)
    return x + r[:, None] * u


def gsa_run(
    obj: Objective,
    x0,
    opts: Optional[SolverOptions] = None,
    gopts: Optional[GsaOptions] = None,
    rng: Optional[np.random.Generator] = None,
) -> RunResult:
    """Gradient sampling from ``x0`` over the radius schedule of ``gopts``.

    One iteration is one sampled direction plus its line search. Each
    radius gets at most ``gopts.maxit_per_phase`` iterations and the run at
    most ``opts.maxit`` in total. A line search failure moves on to the next
    radius; on the last radius it ends the run.
    """
    opts = opts or SolverOptions()
    gopts = gopts or GsaOptions()
    if rng is None:
        rng = np.random.default_rng(opts.rng_seed)
    n = obj.dimension
    x = np.array(x0, dtype=float)
    if x.shape != (n,):
        raise ValueError(f"x0 must have length {n}")
    m = gopts.m_for(n)
    counters = Counters()
    try:
        f, g = evaluate_counted(obj, x, counters)
    except EvaluationError as exc:
        return RunResult(
            x, float("nan"), float("inf"), Reason.EVAL_ERROR, counters,
            phase="GSA", message=str(exc),
        )

    trace = [] if opts.keep_trace else None
    G = g[None, :]
    sol = min_norm_in_hull(G)
    last = len(gopts.radii) - 1

    def finish(reason, message=""):
        return RunResult(
            x_final=x.copy(),
            f_final=f,
            stationarity=sol.norm,
            reason=reason,
            counters=counters,
            trace=trace,
            phase="GSA",
            lam=sol.lam,
            gradients=G,
            message=message,
            extra={"radius": eps},
        )

    for level, eps in enumerate(gopts.radii):
        k_phase = 0
        while True:
            if counters.n_iter >= opts.maxit:
                return finish(Reason.MAX_ITER)
            if k_phase >= gopts.maxit_per_phase:
                if level == last:
                    return finish(Reason.MAX_ITER)
                break

            Y = sample_ball(rng, x, eps, m)
            assert np.all(np.linalg.norm(Y - x, axis=1) <= eps * (1 + 1e-12))
            grads = [g]
            for y in Y:
                try:
                    grads.append(evaluate_counted(obj, y, counters)[1])
                except EvaluationError:
                    pass
            G = np.array(grads)
            sol = min_norm_in_hull(G)
            if sol.norm <= gopts.gsa_normtol:
                if level == last:
                    return finish(Reason.OPTIMAL)
                break

            d = -sol.g_star / sol.norm
            if not g @ d < 0:
                # rounding in the hull solve; no usable direction at this radius
                if level == last:
                    return finish(Reason.LINESEARCH_FAIL, "no descent direction")
                break
            ls = weak_wolfe_search(obj, x, f, g, d, opts, counters)
            counters.n_iter += 1
            k_phase += 1
            if trace is not None:
                trace.append((ls.f_new, ls.t, 1.0, eps))
            if ls.t > 0:
                x, f, g = ls.x_new, ls.f_new, ls.g_new
            if not ls.ok:
                if level == last:
                    return finish(Reason.LINESEARCH_FAIL, ls.status.value)
                break

    # unreachable: the last radius never leaves its loop through ``break``
    return finish(Reason.MAX_ITER)

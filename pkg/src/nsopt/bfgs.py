"""Full-memory BFGS for nonsmooth objectives.

Steps come from the inverse-Hessian approximation and a weak Wolfe line
search. The stopping test looks at every gradient evaluated at an iterate
within ``evaldist`` of the current one and stops when the smallest vector
in their convex hull has norm at most ``normtol``. For smooth functions
this reduces to ``|g| <= normtol``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

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
from .minnorm import HullSolution, min_norm_in_hull

STAGNATION_WINDOW = 10
STAGNATION_RTOL = 1e-16


@dataclass
class GradientBundle:
    cap: int
    entries: deque = field(default_factory=deque)

    def refresh(self, x, g, evaldist: float):
        """Drop entries farther than ``evaldist`` from ``x``, then add
        ``(x, g)``; the oldest entries go first when over ``cap``."""
        self.entries = deque(
            (p, q) for p, q in self.entries if np.linalg.norm(p - x) <= evaldist
        )
        self.entries.append((np.array(x, dtype=float), np.array(g, dtype=float)))
        while len(self.entries) > self.cap:
            self.entries.popleft()

    def gradients(self) -> np.ndarray:
        return np.array([q for _, q in self.entries])

    def __len__(self):
        return len(self.entries)


@dataclass
class BfgsState:
    x: np.ndarray
    f: float
    g: np.ndarray
    H: np.ndarray
    bundle: GradientBundle


def bfgs_update(H, s, y):
    """Inverse BFGS update; returns ``H`` unchanged when ``s.y`` is not
    safely positive."""
    sty = float(s @ y)
    if not sty > 1e-12 * np.linalg.norm(s) * np.linalg.norm(y):
        return H, False
    rho = 1.0 / sty
    Hy = H @ y
    H = (
        H
        - rho * (np.outer(s, Hy) + np.outer(Hy, s))
        + (rho * rho * (y @ Hy) + rho) * np.outer(s, s)
    )
    return 0.5 * (H + H.T), True


def _result(state, counters, reason, sol: HullSolution, trace, message=""):
    return RunResult(
        x_final=state.x.copy(),
        f_final=state.f,
        stationarity=sol.norm,
        reason=reason,
        counters=counters,
        trace=trace,
        phase="BFGS",
        lam=sol.lam,
        gradients=state.bundle.gradients(),
        message=message,
    )


def bfgs_run(
    obj: Objective,
    x0,
    opts: Optional[SolverOptions] = None,
    H0=None,
    on_update=None,
) -> RunResult:
    """Minimize ``obj`` from ``x0`` with BFGS and the nearby-gradient stopping test.

    ``on_update(H)`` is called after every accepted inverse-Hessian update
    (used by tests to audit positive definiteness).
    """
    opts = opts or SolverOptions()
    x = np.array(x0, dtype=float)
    n = obj.dimension
    if x.shape != (n,):
        raise ValueError(f"x0 must have length {n}")
    counters = Counters()
    try:
        f, g = evaluate_counted(obj, x, counters)
    except EvaluationError as exc:
        return RunResult(
            x, float("nan"), float("inf"), Reason.EVAL_ERROR, counters,
            phase="BFGS", message=str(exc),
        )

    H = np.eye(n) if H0 is None else np.array(H0, dtype=float)
    bundle = GradientBundle(opts.cap_for(n))
    bundle.refresh(x, g, opts.evaldist)
    state = BfgsState(x, f, g, H, bundle)
    trace = [] if opts.keep_trace else None

    sol = min_norm_in_hull(bundle.gradients())
    if sol.norm <= opts.normtol:
        return _result(state, counters, Reason.OPTIMAL, sol, trace)

    history = deque([f], maxlen=STAGNATION_WINDOW + 1)
    while counters.n_iter < opts.maxit:
        d = -state.H @ state.g
        if not state.g @ d < 0:
            # lost positive definiteness to rounding; restart from steepest descent
            state.H = np.eye(n)
            d = -state.g
        ls = weak_wolfe_search(obj, state.x, state.f, state.g, d, opts, counters)
        counters.n_iter += 1
        if trace is not None:
            trace.append((ls.f_new, ls.t, float(np.linalg.norm(d)), float(np.linalg.norm(ls.g_new))))

        if not ls.ok:
            if ls.t > 0:
                state.x, state.f, state.g = ls.x_new, ls.f_new, ls.g_new
                state.bundle.refresh(state.x, state.g, opts.evaldist)
                sol = min_norm_in_hull(state.bundle.gradients())
            return _result(state, counters, Reason.LINESEARCH_FAIL, sol, trace, ls.status.value)

        s = ls.x_new - state.x
        y = ls.g_new - state.g
        state.x, state.f, state.g = ls.x_new, ls.f_new, ls.g_new
        state.H, updated = bfgs_update(state.H, s, y)
        if updated and on_update is not None:
            on_update(state.H)

        state.bundle.refresh(state.x, state.g, opts.evaldist)
        sol = min_norm_in_hull(state.bundle.gradients())
        if sol.norm <= opts.normtol:
            return _result(state, counters, Reason.OPTIMAL, sol, trace)

        history.append(state.f)
        if opts.stagnation and len(history) == history.maxlen:
            if history[0] - history[-1] < STAGNATION_RTOL * (1 + abs(history[-1])):
                return _result(state, counters, Reason.STAGNATION, sol, trace)

    return _result(state, counters, Reason.MAX_ITER, sol, trace)

"""Weak Wolfe line search by doubling and bisection.

Works on nonsmooth objectives: only the one-sided curvature condition
``g(x + t d) . d >= c2 g0 . d`` is required, so a jump in the directional
derivative at a kink does not stall the bracket.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import Counters, EvaluationError, Objective, SolverOptions, evaluate_counted

MAX_EXPAND = 30
MAX_BISECT = 50


class LineSearchStatus(str, enum.Enum):
    SUCCESS = "Success"
    FAIL_BRACKET = "FailBracket"
    FAIL_BISECT = "FailBisect"


@dataclass
class LineSearchOutcome:
    t: float
    x_new: np.ndarray
    f_new: float
    g_new: np.ndarray
    evals: int
    status: LineSearchStatus

    @property
    def ok(self) -> bool:
        return self.status is LineSearchStatus.SUCCESS


def weak_wolfe_search(
    obj: Objective,
    x,
    f0: float,
    g0,
    d,
    opts: SolverOptions,
    counters: Counters,
) -> LineSearchOutcome:
    """Find ``t > 0`` with

        f(x + t d) <= f0 + c1 t g0.d      (sufficient decrease)
        g(x + t d).d >= c2 g0.d           (weak curvature)

    starting from ``t = 1``, doubling while only the curvature test fails
    and bisecting once a step has failed sufficient decrease.

    On failure the returned point is the last step that satisfied
    sufficient decrease (``t = 0`` and ``x`` itself if there was none).
    Trial points where the objective is not finite count as failing
    sufficient decrease.
    """
    x = np.asarray(x, dtype=float)
    g0 = np.asarray(g0, dtype=float)
    d = np.asarray(d, dtype=float)
    gtd = float(g0 @ d)
    if not gtd < 0:
        raise ValueError(f"not a descent direction: g0.d = {gtd!r}")

    c1, c2 = opts.c1, opts.c2
    lo, hi = 0.0, np.inf
    t = 1.0
    n_expand = n_bisect = evals = 0
    best = (0.0, x, f0, g0)

    while True:
        x_t = x + t * d
        try:
            f_t, g_t = evaluate_counted(obj, x_t, counters)
        except EvaluationError:
            f_t, g_t = np.inf, None
        evals += 1

        if not (f_t <= f0 + c1 * t * gtd and f_t < f0):
            hi = t
        elif not (g_t @ d >= c2 * gtd):
            lo = t
            best = (t, x_t, f_t, g_t)
        else:
            return LineSearchOutcome(t, x_t, f_t, g_t, evals, LineSearchStatus.SUCCESS)

        if hi < np.inf:
            if n_bisect >= MAX_BISECT:
                return LineSearchOutcome(*best, evals, LineSearchStatus.FAIL_BISECT)
            n_bisect += 1
            t = 0.5 * (lo + hi)
        else:
            if n_expand >= MAX_EXPAND:
                return LineSearchOutcome(*best, evals, LineSearchStatus.FAIL_BRACKET)
            n_expand += 1
            t = 2.0 * t

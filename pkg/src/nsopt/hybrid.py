"""BFGS first, gradient sampling only when BFGS cannot certify stationarity."""

from __future__ import annotations

import dataclasses
from typing import Optional

import numpy as np

from .bfgs import bfgs_run
from .core import Objective, Reason, RunResult, SolverOptions
from .gradsamp import GsaOptions, gsa_run


def hanso_run(
    obj: Objective,
    x0,
    opts: Optional[SolverOptions] = None,
    gopts: Optional[GsaOptions] = None,
    rng: Optional[np.random.Generator] = None,
) -> RunResult:
    """Run BFGS from ``x0``; if it stops short of ``Optimal`` with iterations
    to spare, continue with gradient sampling from its best point.

    The BFGS phase result is kept in ``extra["bfgs"]``.
    """
    opts = opts or SolverOptions()
    gopts = gopts or GsaOptions()
    if rng is None:
        rng = np.random.default_rng(opts.rng_seed)

    first = bfgs_run(obj, x0, opts)
    if first.reason in (Reason.OPTIMAL, Reason.EVAL_ERROR):
        out = dataclasses.replace(first, phase="BFGS-only")
        out.extra = {"bfgs": first}
        return out
    remaining = opts.maxit - first.counters.n_iter
    if remaining <= 0:
        out = dataclasses.replace(first, phase="BFGS-only")
        out.extra = {"bfgs": first}
        return out

    second = gsa_run(obj, first.x_final, dataclasses.replace(opts, maxit=remaining), gopts, rng)
    if second.reason is Reason.EVAL_ERROR:
        out = dataclasses.replace(first, phase="BFGS-only", message=second.message)
        out.extra = {"bfgs": first}
        return out

    counters = first.counters + second.counters
    if second.f_final <= first.f_final:
        x_best, f_best = second.x_final, second.f_final
    else:
        x_best, f_best = first.x_final, first.f_final
    trace = None
    if first.trace is not None and second.trace is not None:
        trace = first.trace + second.trace
    return RunResult(
        x_final=x_best,
        f_final=f_best,
        stationarity=second.stationarity,
        reason=second.reason,
        counters=counters,
        trace=trace,
        phase="BFGS+GSA",
        lam=second.lam,
        gradients=second.gradients,
        message=second.message,
        extra={"bfgs": first, "gsa": second},
    )

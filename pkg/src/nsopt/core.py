"""Shared types: objectives, solver options, counters and run results."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

EvalFn = Callable[[np.ndarray], "tuple[float, np.ndarray]"]


class Reason(str, enum.Enum):
    OPTIMAL = "Optimal"
    MAX_ITER = "MaxIter"
    LINESEARCH_FAIL = "LineSearchFail"
    STAGNATION = "Stagnation"
    EVAL_ERROR = "EvalError"


class EvaluationError(FloatingPointError):
    """Objective returned a non-finite value or gradient."""

    def __init__(self, x, f, g):
        self.x = np.array(x, dtype=float)
        self.f = f
        self.g = g
        super().__init__(f"non-finite evaluation at x={self.x!r}: f={f!r}")


@dataclass(frozen=True)
class ProblemMeta:
    name: str
    n: int
    f_star: float
    convex: bool
    # starting point and minimizer documented by the test collection, if any
    x0: Optional[tuple] = None
    x_star: Optional[tuple] = None


@dataclass(frozen=True)
class Objective:
    name: str
    dimension: int
    eval: EvalFn
    metadata: Optional[ProblemMeta] = None

    def __call__(self, x):
        return self.eval(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class SolverOptions:
    normtol: float = 1e-6
    evaldist: float = 1e-4
    maxit: int = 1000
    c1: float = 1e-4
    c2: float = 0.5
    # None means min(100, 2n + 10)
    bundle_cap: Optional[int] = None
    rng_seed: int = 0
    stagnation: bool = True
    keep_trace: bool = False

    def __post_init__(self):
        if not self.normtol > 0:
            raise ValueError("normtol must be positive")
        if not self.evaldist > 0:
            raise ValueError("evaldist must be positive")
        if not 0 < self.c1 < self.c2 < 1:
            raise ValueError("need 0 < c1 < c2 < 1")
        if self.maxit < 1:
            raise ValueError("maxit must be a positive integer")
        if self.bundle_cap is not None and self.bundle_cap < 1:
            raise ValueError("bundle_cap must be a positive integer")
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be unsigned")

    def cap_for(self, n: int) -> int:
        if self.bundle_cap is not None:
            return self.bundle_cap
        return min(100, 2 * n + 10)


@dataclass
class Counters:
    n_iter: int = 0
    n_fev: int = 0
    n_gev: int = 0

    def as_tuple(self) -> tuple:
        return (self.n_iter, self.n_fev, self.n_gev)

    def __add__(self, other: "Counters") -> "Counters":
        return Counters(
            self.n_iter + other.n_iter,
            self.n_fev + other.n_fev,
            self.n_gev + other.n_gev,
        )


@dataclass
class RunResult:
    x_final: np.ndarray
    f_final: float
    stationarity: float
    reason: Reason
    counters: Counters
    trace: Optional[list] = None
    phase: str = ""
    # weights of the final min-norm certificate over the last gradient set
    lam: Optional[np.ndarray] = None
    # gradient set the certificate was computed from
    gradients: Optional[np.ndarray] = None
    message: str = ""
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "f_final": float(self.f_final),
            "stationarity": float(self.stationarity),
            "reason": self.reason.value,
            "n_iter": self.counters.n_iter,
            "n_fev": self.counters.n_fev,
            "n_gev": self.counters.n_gev,
            "phase": self.phase,
            "x_final": [float(v) for v in self.x_final],
        }


def evaluate_counted(obj: Objective, x, counters: Counters):
    """Evaluate ``obj`` at ``x``, charging one function and one gradient
    evaluation to ``counters``.

    Raises :class:`EvaluationError` on a non-finite value or gradient.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (obj.dimension,):
        raise ValueError(
            f"{obj.name}: expected a point of length {obj.dimension}, got shape {x.shape}"
        )
    # overflow at wild trial points is reported through EvaluationError below
    with np.errstate(over="ignore", invalid="ignore"):
        f, g = obj.eval(x)
    counters.n_fev += 1
    counters.n_gev += 1
    f = float(f)
    g = np.asarray(g, dtype=float)
    if not np.isfinite(f) or not np.all(np.isfinite(g)):
        raise EvaluationError(x, f, g)
    return f, g

"""Registry of the 36 academic nonsmooth test problems.

Every problem evaluates to ``(f, g)`` where ``g`` is the gradient wherever
``f`` is differentiable, and one element of the subdifferential otherwise:

* max-type functions return the gradient of the lowest-index maximizing piece;
* absolute values use ``sign(0) = +1``.

Minimax problems are stored as a vector of pieces ``F`` with Jacobian ``J``
and reduced by :func:`_max_of`, :func:`_max_abs` or :func:`_sum_abs`.
"""

from __future__ import annotations

import re

import numpy as np

from .core import Objective, ProblemMeta


def _sgn(v):
    return np.where(np.asarray(v) >= 0, 1.0, -1.0)


def _max_of(F, J):
    i = int(np.argmax(F))
    return float(F[i]), np.array(J[i], dtype=float)


def _max_abs(F, J):
    a = np.abs(F)
    i = int(np.argmax(a))
    s = 1.0 if F[i] >= 0 else -1.0
    return float(a[i]), s * np.array(J[i], dtype=float)


def _sum_abs(F, J):
    return float(np.sum(np.abs(F))), _sgn(F) @ J


# ---------------------------------------------------------------------------
# two-variable problems


def rosenbrock(x):
    x1, x2 = x
    f = 100.0 * (x2 - x1**2) ** 2 + (1.0 - x1) ** 2
    g = np.array([-400.0 * x1 * (x2 - x1**2) - 2.0 * (1.0 - x1), 200.0 * (x2 - x1**2)])
    return f, g


def crescent(x):
    x1, x2 = x
    F = np.array([
        x1**2 + (x2 - 1) ** 2 + x2 - 1,
        -(x1**2) - (x2 - 1) ** 2 + x2 + 1,
    ])
    J = np.array([
        [2 * x1, 2 * (x2 - 1) + 1],
        [-2 * x1, -2 * (x2 - 1) + 1],
    ])
    return _max_of(F, J)


def cb2(x):
    x1, x2 = x
    e = 2.0 * np.exp(x2 - x1)
    F = np.array([x1**2 + x2**4, (2 - x1) ** 2 + (2 - x2) ** 2, e])
    J = np.array([
        [2 * x1, 4 * x2**3],
        [-2 * (2 - x1), -2 * (2 - x2)],
        [-e, e],
    ])
    return _max_of(F, J)


def cb3(x):
    x1, x2 = x
    e = 2.0 * np.exp(x2 - x1)
    F = np.array([x1**4 + x2**2, (2 - x1) ** 2 + (2 - x2) ** 2, e])
    J = np.array([
        [4 * x1**3, 2 * x2],
        [-2 * (2 - x1), -2 * (2 - x2)],
        [-e, e],
    ])
    return _max_of(F, J)


def dem(x):
    x1, x2 = x
    F = np.array([5 * x1 + x2, -5 * x1 + x2, x1**2 + x2**2 + 4 * x2])
    J = np.array([[5.0, 1.0], [-5.0, 1.0], [2 * x1, 2 * x2 + 4]])
    return _max_of(F, J)


def ql(x):
    x1, x2 = x
    q = x1**2 + x2**2
    F = np.array([q, q + 10 * (-4 * x1 - x2 + 4), q + 10 * (-x1 - 2 * x2 + 6)])
    J = np.array([
        [2 * x1, 2 * x2],
        [2 * x1 - 40, 2 * x2 - 10],
        [2 * x1 - 10, 2 * x2 - 20],
    ])
    return _max_of(F, J)


def lq(x):
    x1, x2 = x
    F = np.array([-x1 - x2, -x1 - x2 + x1**2 + x2**2 - 1])
    J = np.array([[-1.0, -1.0], [-1 + 2 * x1, -1 + 2 * x2]])
    return _max_of(F, J)


def mifflin1(x):
    x1, x2 = x
    F = np.array([-x1, -x1 + 20 * (x1**2 + x2**2 - 1)])
    J = np.array([[-1.0, 0.0], [-1 + 40 * x1, 40 * x2]])
    return _max_of(F, J)


def mifflin2(x):
    x1, x2 = x
    r = x1**2 + x2**2 - 1
    s = 1.0 if r >= 0 else -1.0
    f = -x1 + 2 * r + 1.75 * abs(r)
    c = 2.0 + 1.75 * s
    return f, np.array([-1 + 2 * c * x1, 2 * c * x2])


def wolfe(x):
    x1, x2 = x
    s2 = 1.0 if x2 >= 0 else -1.0
    if x1 >= abs(x2):
        q = np.sqrt(9 * x1**2 + 16 * x2**2)
        if q == 0.0:
            return 0.0, np.array([15.0, 0.0])
        return 5 * q, np.array([45 * x1 / q, 80 * x2 / q])
    if x1 > 0:
        return 9 * x1 + 16 * abs(x2), np.array([9.0, 16 * s2])
    return 9 * x1 + 16 * abs(x2) - x1**9, np.array([9 - 9 * x1**8, 16 * s2])


def wf(x):
    x1, x2 = x
    r = 10 * x1 / (x1 + 0.1)
    dr = 1.0 / (x1 + 0.1) ** 2  # d/dx1 of 10 x1/(x1+0.1)
    F = 0.5 * np.array([x1 + r + 2 * x2**2, -x1 + r + 2 * x2**2, x1 - r + 2 * x2**2])
    J = 0.5 * np.array([
        [1 + dr, 4 * x2],
        [-1 + dr, 4 * x2],
        [1 - dr, 4 * x2],
    ])
    return _max_of(F, J)


def spiral(x):
    x1, x2 = x
    r = np.hypot(x1, x2)
    u = x1 - r * np.cos(r)
    v = x2 - r * np.sin(r)
    dir_ = np.array([x1, x2]) / r if r > 0 else np.zeros(2)
    du = np.array([1.0, 0.0]) - (np.cos(r) - r * np.sin(r)) * dir_
    dv = np.array([0.0, 1.0]) - (np.sin(r) + r * np.cos(r)) * dir_
    reg = 0.005 * (x1**2 + x2**2)
    dreg = 0.01 * np.array([x1, x2])
    F = np.array([u**2 + reg, v**2 + reg])
    J = np.array([2 * u * du + dreg, 2 * v * dv + dreg])
    return _max_of(F, J)


# ---------------------------------------------------------------------------
# small minimax problems


def evd52(x):
    x1, x2, x3 = x
    w = 5 * x3 - x1 + 1
    F = np.array([
        x1**2 + x2**2 + x3**2 - 1,
        x1**2 + x2**2 + (x3 - 2) ** 2,
        x1 + x2 + x3 - 1,
        x1 + x2 - x3 + 1,
        2 * x1**3 + 6 * x2**2 + 2 * w**2,
        x1**2 - 9 * x3,
    ])
    J = np.array([
        [2 * x1, 2 * x2, 2 * x3],
        [2 * x1, 2 * x2, 2 * (x3 - 2)],
        [1.0, 1.0, 1.0],
        [1.0, 1.0, -1.0],
        [6 * x1**2 - 4 * w, 12 * x2, 20 * w],
        [2 * x1, 0.0, -9.0],
    ])
    return _max_of(F, J)


def _rosen_suzuki_pieces(y):
    y1, y2, y3, y4 = y
    p1 = y1**2 + y2**2 + 2 * y3**2 + y4**2 - 5 * y1 - 5 * y2 - 21 * y3 + 7 * y4
    p2 = y1**2 + y2**2 + y3**2 + y4**2 + y1 - y2 + y3 - y4 - 8
    p3 = y1**2 + 2 * y2**2 + y3**2 + 2 * y4**2 - y1 - y4 - 10
    p4 = y1**2 + y2**2 + y3**2 + 2 * y1 - y2 - y4 - 5
    d1 = np.array([2 * y1 - 5, 2 * y2 - 5, 4 * y3 - 21, 2 * y4 + 7])
    d2 = np.array([2 * y1 + 1, 2 * y2 - 1, 2 * y3 + 1, 2 * y4 - 1])
    d3 = np.array([2 * y1 - 1, 4 * y2, 2 * y3, 4 * y4 - 1])
    d4 = np.array([2 * y1 + 2, 2 * y2 - 1, 2 * y3, -1.0])
    F = np.array([p1, p1 + 10 * p2, p1 + 10 * p3, p1 + 10 * p4])
    J = np.array([d1, d1 + 10 * d2, d1 + 10 * d3, d1 + 10 * d4])
    return F, J


def rosen_suzuki(x):
    return _max_of(*_rosen_suzuki_pieces(x))


def polak6(x):
    # Rosen-Suzuki composed with y1 = x1 - (x4+1)^4, y2 = x2 - y1^4
    x1, x2, x3, x4 = x
    y1 = x1 - (x4 + 1) ** 4
    y2 = x2 - y1**4
    T = np.eye(4)
    T[0, 3] = -4 * (x4 + 1) ** 3
    T[1] = np.array([0.0, 1.0, 0.0, 0.0]) - 4 * y1**3 * T[0]
    F, Jy = _rosen_suzuki_pieces(np.array([y1, y2, x3, x4]))
    return _max_of(F, Jy @ T)


_T_DAV = 0.2 * np.arange(1, 21)


def davidon2(x):
    t = _T_DAV
    a = x[0] + x[1] * t - np.exp(t)
    b = x[2] + x[3] * np.sin(t) - np.cos(t)
    F = a**2 + b**2
    J = np.column_stack([2 * a, 2 * a * t, 2 * b, 2 * b * np.sin(t)])
    return _max_abs(F, J)


_T_OET5 = 0.25 + 0.75 * np.arange(21) / 20.0
_T_OET6 = -0.5 + np.arange(21) / 20.0


def oet5(x):
    t = _T_OET5
    p = x[0] * t**2 + x[1] * t + x[2]
    F = x[3] - p**2 - np.sqrt(t)
    J = np.column_stack([-2 * p * t**2, -2 * p * t, -2 * p, np.ones_like(t)])
    return _max_abs(F, J)


def oet6(x):
    t = _T_OET6
    e3 = np.exp(x[2] * t)
    e4 = np.exp(x[3] * t)
    F = x[0] * e3 + x[1] * e4 - 1.0 / (1.0 + t)
    J = np.column_stack([e3, e4, x[0] * t * e3, x[1] * t * e4])
    return _max_abs(F, J)


_SHOR_A = np.array([
    [0, 0, 0, 0, 0],
    [2, 1, 1, 1, 3],
    [1, 2, 1, 1, 2],
    [1, 4, 1, 2, 2],
    [3, 2, 1, 0, 1],
    [0, 2, 1, 0, 1],
    [1, 1, 1, 1, 1],
    [1, 0, 1, 2, 1],
    [0, 0, 2, 1, 0],
    [1, 1, 2, 0, 0],
], dtype=float)
_SHOR_B = np.array([1, 5, 10, 2, 4, 3, 1.7, 2.5, 6, 3.5])


def shor(x):
    D = x[None, :] - _SHOR_A
    F = _SHOR_B * np.sum(D**2, axis=1)
    J = 2 * _SHOR_B[:, None] * D
    return _max_of(F, J)


_T_ELA = np.arange(51) / 10.0
_Y_ELA = (
    0.5 * np.exp(-_T_ELA)
    - np.exp(-2 * _T_ELA)
    + 0.5 * np.exp(-3 * _T_ELA)
    + 1.5 * np.exp(-1.5 * _T_ELA) * np.sin(7 * _T_ELA)
    + np.exp(-2.5 * _T_ELA) * np.sin(5 * _T_ELA)
)


def el_attar(x):
    t = _T_ELA
    e2 = np.exp(-x[1] * t)
    c = np.cos(x[2] * t + x[3])
    s = np.sin(x[2] * t + x[3])
    e6 = np.exp(-x[5] * t)
    F = x[0] * e2 * c + x[4] * e6 - _Y_ELA
    J = np.column_stack([
        e2 * c,
        -t * x[0] * e2 * c,
        -t * x[0] * e2 * s,
        -x[0] * e2 * s,
        e6,
        -t * x[4] * e6,
    ])
    return _sum_abs(F, J)


# ---------------------------------------------------------------------------
# penalized constrained problems (exact penalty with weight 10)


def _wong1_pieces(x):
    x1, x2, x3, x4, x5, x6, x7 = x
    p = (x1 - 10) ** 2 + 5 * (x2 - 12) ** 2 + x3**4 + 3 * (x4 - 11) ** 2 \
        + 10 * x5**6 + 7 * x6**2 + x7**4 - 4 * x6 * x7 - 10 * x6 - 8 * x7
    dp = np.array([
        2 * (x1 - 10), 10 * (x2 - 12), 4 * x3**3, 6 * (x4 - 11),
        60 * x5**5, 14 * x6 - 4 * x7 - 10, 4 * x7**3 - 4 * x6 - 8,
    ])
    c = np.array([
        2 * x1**2 + 3 * x2**4 + x3 + 4 * x4**2 + 5 * x5 - 127,
        7 * x1 + 3 * x2 + 10 * x3**2 + x4 - x5 - 282,
        23 * x1 + x2**2 + 6 * x6**2 - 8 * x7 - 196,
        4 * x1**2 + x2**2 - 3 * x1 * x2 + 2 * x3**2 + 5 * x6 - 11 * x7,
    ])
    dc = np.array([
        [4 * x1, 12 * x2**3, 1, 8 * x4, 5, 0, 0],
        [7, 3, 20 * x3, 1, -1, 0, 0],
        [23, 2 * x2, 0, 0, 0, 12 * x6, -8],
        [8 * x1 - 3 * x2, 2 * x2 - 3 * x1, 4 * x3, 0, 0, 5, -11],
    ], dtype=float)
    return p, dp, c, dc


def _penalized(p, dp, c, dc, weight=10.0):
    F = np.concatenate([[p], p + weight * c])
    J = np.vstack([dp, dp[None, :] + weight * dc])
    return F, J


def wong1(x):
    return _max_of(*_penalized(*_wong1_pieces(x)))


def _wong2_core(x):
    """Objective terms and the eight constraints shared by Wong 2 and Wong 3."""
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10 = x[:10]
    n = len(x)
    p = x1**2 + x2**2 + x1 * x2 - 14 * x1 - 16 * x2 + (x3 - 10) ** 2 \
        + 4 * (x4 - 5) ** 2 + (x5 - 3) ** 2 + 2 * (x6 - 1) ** 2 + 5 * x7**2 \
        + 7 * (x8 - 11) ** 2 + 2 * (x9 - 10) ** 2 + (x10 - 7) ** 2
    dp = np.zeros(n)
    dp[:10] = [
        2 * x1 + x2 - 14, 2 * x2 + x1 - 16, 2 * (x3 - 10), 8 * (x4 - 5),
        2 * (x5 - 3), 4 * (x6 - 1), 10 * x7, 14 * (x8 - 11), 4 * (x9 - 10),
        2 * (x10 - 7),
    ]
    c = np.array([
        3 * (x1 - 2) ** 2 + 4 * (x2 - 3) ** 2 + 2 * x3**2 - 7 * x4 - 120,
        5 * x1**2 + 8 * x2 + (x3 - 6) ** 2 - 2 * x4 - 40,
        0.5 * (x1 - 8) ** 2 + 2 * (x2 - 4) ** 2 + 3 * x5**2 - x6 - 30,
        x1**2 + 2 * (x2 - 2) ** 2 - 2 * x1 * x2 + 14 * x5 - 6 * x6,
        4 * x1 + 5 * x2 - 3 * x7 + 9 * x8 - 105,
        10 * x1 - 8 * x2 - 17 * x7 + 2 * x8,
        -3 * x1 + 6 * x2 + 12 * (x9 - 8) ** 2 - 7 * x10,
        -8 * x1 + 2 * x2 + 5 * x9 - 2 * x10 - 12,
    ])
    dc = np.zeros((8, n))
    dc[0, :4] = [6 * (x1 - 2), 8 * (x2 - 3), 4 * x3, -7]
    dc[1, :4] = [10 * x1, 8, 2 * (x3 - 6), -2]
    dc[2, [0, 1, 4, 5]] = [x1 - 8, 4 * (x2 - 4), 6 * x5, -1]
    dc[3, [0, 1, 4, 5]] = [2 * x1 - 2 * x2, 4 * (x2 - 2) - 2 * x1, 14, -6]
    dc[4, [0, 1, 6, 7]] = [4, 5, -3, 9]
    dc[5, [0, 1, 6, 7]] = [10, -8, -17, 2]
    dc[6, [0, 1, 8, 9]] = [-3, 6, 24 * (x9 - 8), -7]
    dc[7, [0, 1, 8, 9]] = [-8, 2, 5, -2]
    return p, dp, c, dc


def wong2(x):
    p, dp, c, dc = _wong2_core(x)
    return _max_of(*_penalized(p + 45.0, dp, c, dc))


def wong3(x):
    p, dp, c, dc = _wong2_core(x)
    (x1, x2), y = x[:2], x[10:]
    x11, x12, x13, x14, x15, x16, x17, x18, x19, x20 = y
    p = p + (x11 - 9) ** 2 + 10 * (x12 - 1) ** 2 + 5 * (x13 - 7) ** 2 \
        + 4 * (x14 - 14) ** 2 + 27 * (x15 - 1) ** 2 + x16**4 + (x17 - 2) ** 2 \
        + 13 * (x18 - 2) ** 2 + (x19 - 3) ** 2 + x20**2 + 95
    dp = dp.copy()
    dp[10:] = [
        2 * (x11 - 9), 20 * (x12 - 1), 10 * (x13 - 7), 8 * (x14 - 14),
        54 * (x15 - 1), 4 * x16**3, 2 * (x17 - 2), 26 * (x18 - 2),
        2 * (x19 - 3), 2 * x20,
    ]
    c2 = np.array([
        x1 + x2 + 4 * x11 - 21 * x12,
        x1**2 + 5 * x11 - 8 * x12 - 28,
        4 * x1 + 9 * x2 + 5 * x13**2 - 9 * x14 - 87,
        3 * x1 + 4 * x2 + 3 * (x13 - 6) ** 2 - 14 * x14 - 10,
        14 * x1**2 + 35 * x15 - 79 * x16 - 92,
        15 * x2**2 + 11 * x15 - 61 * x16 - 54,
        5 * x1**2 + 2 * x2 + 9 * x17**4 - x18 - 68,
        x1**2 - x2 + 19 * x19 - 20 * x20 + 19,
        7 * x1**2 + 5 * x2**2 + x19**2 - 30 * x20,
    ])
    dc2 = np.zeros((9, 20))
    dc2[0, [0, 1, 10, 11]] = [1, 1, 4, -21]
    dc2[1, [0, 10, 11]] = [2 * x1, 5, -8]
    dc2[2, [0, 1, 12, 13]] = [4, 9, 10 * x13, -9]
    dc2[3, [0, 1, 12, 13]] = [3, 4, 6 * (x13 - 6), -14]
    dc2[4, [0, 14, 15]] = [28 * x1, 35, -79]
    dc2[5, [1, 14, 15]] = [30 * x2, 11, -61]
    dc2[6, [0, 1, 16, 17]] = [10 * x1, 2, 36 * x17**3, -1]
    dc2[7, [0, 1, 18, 19]] = [2 * x1, -1, 19, -20]
    dc2[8, [0, 1, 18, 19]] = [14 * x1, 10 * x2, 2 * x19, -30]
    return _max_of(*_penalized(p, dp, np.concatenate([c, c2]), np.vstack([dc, dc2])))


# ---------------------------------------------------------------------------
# larger problems


def polak2(x):
    q = 1e-8 * x[0] ** 2 + x[2] ** 2 + 4 * x[3] ** 2 + np.sum(x[4:] ** 2)
    dq = np.concatenate([[2e-8 * x[0], 0.0, 2 * x[2], 8 * x[3]], 2 * x[4:]])
    e_plus = np.exp(q + (x[1] + 2) ** 2)
    e_minus = np.exp(q + (x[1] - 2) ** 2)
    J = np.array([dq, dq])
    J[0, 1] = 2 * (x[1] + 2)
    J[1, 1] = 2 * (x[1] - 2)
    F = np.array([e_plus, e_minus])
    return _max_of(F, F[:, None] * J)


def _maxquad_data():
    n, m = 10, 5
    A = np.zeros((m, n, n))
    B = np.zeros((m, n))
    j = np.arange(1, n + 1)
    for i in range(1, m + 1):
        for jj in range(1, n + 1):
            for kk in range(jj + 1, n + 1):
                a = np.exp(jj / kk) * np.cos(jj * kk) * np.sin(i)
                A[i - 1, jj - 1, kk - 1] = a
                A[i - 1, kk - 1, jj - 1] = a
        off = np.sum(np.abs(A[i - 1]), axis=1)
        A[i - 1][np.diag_indices(n)] = j / 10.0 * abs(np.sin(i)) + off
        B[i - 1] = np.exp(j / i) * np.sin(i * j)
    return A, B


_MAXQUAD_A, _MAXQUAD_B = _maxquad_data()


def maxquad(x):
    Ax = _MAXQUAD_A @ x
    F = Ax @ x - _MAXQUAD_B @ x
    J = 2 * Ax - _MAXQUAD_B
    return _max_of(F, J)


_T_GILL = np.arange(1, 30) / 29.0


def _watson_residuals(x, t):
    """Residuals ``sum_j (j-1) x_j t^(j-2) - (sum_j x_j t^(j-1))^2 - 1`` and
    their Jacobian, one row per entry of ``t``."""
    n = len(x)
    P = t[:, None] ** np.arange(n)[None, :]  # t^(j-1)
    jm1 = np.arange(n, dtype=float)
    D = np.zeros_like(P)
    D[:, 1:] = jm1[1:] * P[:, :-1]  # (j-1) t^(j-2)
    s = P @ x
    R = D @ x - s**2 - 1.0
    JR = D - 2 * s[:, None] * P
    return R, JR


def gill(x):
    q = np.sum(x**2) - 0.25
    f1 = np.sum((x - 1) ** 2) + 1e-3 * q**2
    g1 = 2 * (x - 1) + 4e-3 * q * x
    R, JR = _watson_residuals(x, _T_GILL)
    w = x[1] - x[0] ** 2 - 1
    f2 = np.sum(R**2) + x[0] ** 2 + w**2
    g2 = 2 * JR.T @ R
    g2[0] += 2 * x[0] - 4 * x[0] * w
    g2[1] += 2 * w
    a = x[1:] - x[:-1] ** 2
    f3 = np.sum(100 * a**2 + (1 - x[1:]) ** 2)
    g3 = np.zeros_like(x)
    g3[1:] += 200 * a - 2 * (1 - x[1:])
    g3[:-1] -= 400 * a * x[:-1]
    return _max_of(np.array([f1, f2, f3]), np.array([g1, g2, g3]))


# pieces i = 1..10, terms j = 0..10: weight 1/(i+j), centre sin(i-1+2j)
_POLAK3_I = np.arange(1, 11)[:, None]
_POLAK3_J = np.arange(11)[None, :]
_POLAK3_S = np.sin(_POLAK3_I - 1 + 2 * _POLAK3_J)
_POLAK3_W = 1.0 / (_POLAK3_I + _POLAK3_J)


def polak3(x):
    d = x[None, :] - _POLAK3_S
    E = _POLAK3_W * np.exp(d**2)
    return _max_of(E.sum(axis=1), 2 * d * E)


_T_OSB = np.arange(65) / 10.0
_Y_OSB = np.array([
    1.366, 1.191, 1.112, 1.013, 0.991, 0.885, 0.831, 0.847, 0.786, 0.725,
    0.746, 0.679, 0.608, 0.655, 0.616, 0.606, 0.602, 0.626, 0.651, 0.724,
    0.649, 0.649, 0.694, 0.644, 0.624, 0.661, 0.612, 0.558, 0.533, 0.495,
    0.500, 0.423, 0.395, 0.375, 0.372, 0.391, 0.396, 0.405, 0.428, 0.429,
    0.523, 0.562, 0.607, 0.653, 0.672, 0.708, 0.633, 0.668, 0.645, 0.632,
    0.591, 0.559, 0.597, 0.625, 0.739, 0.710, 0.729, 0.720, 0.636, 0.581,
    0.428, 0.292, 0.162, 0.098, 0.054,
])


def osborne2(x):
    t = _T_OSB
    e1 = np.exp(-t * x[4])
    J = np.zeros((65, 11))
    model = x[0] * e1
    J[:, 0] = -e1
    J[:, 4] = t * x[0] * e1
    for k in range(3):
        amp, rate, centre = x[1 + k], x[5 + k], x[8 + k]
        dt = t - centre
        e = np.exp(-rate * dt**2)
        model = model + amp * e
        J[:, 1 + k] = -e
        J[:, 5 + k] = amp * dt**2 * e
        J[:, 8 + k] = -2 * amp * rate * dt * e
    return _max_abs(_Y_OSB - model, J)


_T_WATSON = np.arange(29) / 29.0


def watson(x):
    R, JR = _watson_residuals(x, _T_WATSON)
    e30 = np.zeros(20)
    e30[0] = 1.0
    e31 = np.zeros(20)
    e31[0] = -2 * x[0]
    e31[1] = 1.0
    F = np.concatenate([R, [x[0], x[1] - x[0] ** 2 - 1]])
    J = np.vstack([JR, e30, e31])
    return _max_abs(F, J)


# Steiner 2 is a stand-in: the collection's terminal data are not available,
# so this is a network of the same size built from made-up data. Six free
# points z_j = (x_j, x_{j+6}) are each tied to a fixed terminal and to the
# next free point in the chain. The unscaled network has minimum 4(1 + sqrt 2);
# the scale puts the minimum at the listed optimal value 16.703838.
_STEINER_A = np.array([0.0, 2.0, 2.0, 0.0, 1.0, 1.0])
_STEINER_B = np.array([0.0, 0.0, 2.0, 2.0, 0.0, 2.0])
_STEINER_SCALE = 16.703838 / (4.0 * (1.0 + np.sqrt(2.0)))
_STEINER_W = _STEINER_SCALE * np.array([1.0, 1.0, 1.0, 1.0, 2.0, 2.0])
_STEINER_U = _STEINER_SCALE * np.array([2.0, 2.0, 2.0, 2.0, 2.0])


def steiner2(x):
    m = 6
    px, py = x[:m], x[m:]
    dx, dy = px - _STEINER_A, py - _STEINER_B
    r = np.hypot(dx, dy)
    ux, uy = px[1:] - px[:-1], py[1:] - py[:-1]
    q = np.hypot(ux, uy)
    f = float(_STEINER_W @ r + _STEINER_U @ q)
    g = np.zeros(2 * m)
    rs = np.where(r > 0, r, 1.0)
    g[:m] += np.where(r > 0, _STEINER_W * dx / rs, 0.0)
    g[m:] += np.where(r > 0, _STEINER_W * dy / rs, 0.0)
    qs = np.where(q > 0, q, 1.0)
    cx = np.where(q > 0, _STEINER_U * ux / qs, 0.0)
    cy = np.where(q > 0, _STEINER_U * uy / qs, 0.0)
    g[1:m] += cx
    g[: m - 1] -= cx
    g[m + 1:] += cy
    g[m: 2 * m - 1] -= cy
    return f, g


_SD_A = np.array([
    [-16, 2, 0, 1, 0],
    [0, -2, 0, 0.4, 2],
    [-3.5, 0, 2, 0, 0],
    [0, -2, 0, -4, -1],
    [0, -9, -2, 1, -2.8],
    [2, 0, -4, 0, 0],
    [-1, -1, -1, -1, -1],
    [-1, -2, -3, -2, -1],
    [1, 2, 3, 4, 5],
    [1, 1, 1, 1, 1],
], dtype=float)
_SD_B = np.array([-40, -2, -0.25, -4, -4, -1, -40, -60, 5, 1], dtype=float)
_SD_C = np.array([
    [30, -20, -10, 32, -10],
    [-20, 39, -6, -31, 32],
    [-10, -6, 10, -6, -10],
    [32, -31, -6, 39, -20],
    [-10, 32, -10, -20, 30],
], dtype=float)
_SD_D = np.array([4, 8, 10, 6, 2], dtype=float)
_SD_E = np.array([-15, -27, -36, -18, -12], dtype=float)
_SD_PENALTY = 100.0


def shell_dual(x):
    u, y = x[:10], x[10:]
    cubic = _SD_D @ y**3
    quad = y @ _SD_C @ y
    f = 2 * abs(cubic) + abs(quad) - _SD_B @ u
    g = np.zeros(15)
    g[10:] = 2 * _sgn(cubic) * 3 * _SD_D * y**2 + _sgn(quad) * 2 * _SD_C @ y
    g[:10] = -_SD_B
    cons = 2 * _SD_C @ y + 3 * _SD_D * y**2 + _SD_E - _SD_A.T @ u
    viol = cons < 0
    f += _SD_PENALTY * (-np.sum(cons[viol]))
    g[:10] += _SD_PENALTY * _SD_A[:, viol].sum(axis=1)
    g[10:] -= _SD_PENALTY * (2 * _SD_C[:, viol].sum(axis=1))
    g[10:] -= _SD_PENALTY * np.where(viol, 6 * _SD_D * y, 0.0)
    neg = x < 0
    f += _SD_PENALTY * (-np.sum(x[neg]))
    g[neg] -= _SD_PENALTY
    return float(f), g


def maxq(x):
    i = int(np.argmax(x**2))
    g = np.zeros_like(x)
    g[i] = 2 * x[i]
    return float(x[i] ** 2), g


def maxl(x):
    a = np.abs(x)
    i = int(np.argmax(a))
    g = np.zeros_like(x)
    g[i] = 1.0 if x[i] >= 0 else -1.0
    return float(a[i]), g


def goffin(x):
    i = int(np.argmax(x))
    g = -np.ones_like(x)
    g[i] += len(x)
    return float(len(x) * x[i] - np.sum(x)), g


_HILB = 1.0 / (np.arange(1, 51)[:, None] + np.arange(50)[None, :])


def mxhilb(x):
    return _max_abs(_HILB @ x, _HILB)


def l1hilb(x):
    return _sum_abs(_HILB @ x, _HILB)


# ---------------------------------------------------------------------------
# registry

# (name, fn, n, f_star, convex, x0 of the collection, documented minimizer)
_TABLE = [
    ("CB2", cb2, 2, 1.9522245, True, (1.0, -0.1), None),
    ("WF", wf, 2, 0.0, False, (3.0, 1.0), (0.0, 0.0)),
    ("SPIRAL", spiral, 2, 0.0, False, (1.41831, -4.79462), (0.0, 0.0)),
    ("Rosenbrock", rosenbrock, 2, 0.0, False, (-1.2, 1.0), (1.0, 1.0)),
    ("Crescent", crescent, 2, 0.0, False, (-1.5, 2.0), (0.0, 0.0)),
    ("CB3", cb3, 2, 2.0, True, (2.0, 2.0), (1.0, 1.0)),
    ("DEM", dem, 2, -3.0, True, (1.0, 1.0), (0.0, -3.0)),
    ("QL", ql, 2, 7.2, True, (-1.0, 5.0), (1.2, 2.4)),
    ("LQ", lq, 2, -1.4142136, True, (-0.5, -0.5), (2**-0.5, 2**-0.5)),
    ("Mifflin 1", mifflin1, 2, -1.0, True, (0.8, 0.6), (1.0, 0.0)),
    ("Mifflin 2", mifflin2, 2, -1.0, False, (-1.0, -1.0), (1.0, 0.0)),
    ("Wolfe", wolfe, 2, -8.0, True, (3.0, 2.0), (-1.0, 0.0)),
    ("EVD52", evd52, 3, 3.5997193, False, (1.0, 1.0, 1.0), None),
    ("Rosen_Suzuki", rosen_suzuki, 4, -44.0, True, (0.0,) * 4, (0.0, 1.0, 2.0, -1.0)),
    ("Polak6", polak6, 4, -44.0, True, (0.0,) * 4, (0.0, 1.0, 2.0, -1.0)),
    ("Davidon 2", davidon2, 4, 115.70644, True, (25.0, 5.0, -5.0, -1.0), None),
    ("OET5", oet5, 4, 0.26359735e-2, False, (0.0,) * 4, None),
    ("OET6", oet6, 4, 0.20160753e-2, False, (1.0, 1.0, -3.0, -1.0), None),
    ("Shor", shor, 5, 22.600162, True, (0.0, 0.0, 0.0, 0.0, 1.0), None),
    ("El-Attar", el_attar, 6, 0.5598131, False, (2.0, 2.0, 7.0, 0.0, -2.0, 1.0), None),
    ("Wong 1", wong1, 7, 680.63006, True, (1.0, 2.0, 0.0, 4.0, 0.0, 1.0, 1.0), None),
    ("Wong 2", wong2, 10, 24.306209, True,
     (2.0, 3.0, 5.0, 5.0, 1.0, 2.0, 7.0, 3.0, 6.0, 10.0), None),
    ("Polak 2", polak2, 10, 54.598150, True, (100.0,) + (0.1,) * 9, (0.0,) * 10),
    ("Maxquad", maxquad, 10, -0.8414083, True, (1.0,) * 10, None),
    ("Gill", gill, 10, 9.7857721, False, (-0.1,) * 10, None),
    ("Polak 3", polak3, 11, 3.70348, True, (1.0,) * 11, None),
    ("Osborne 2", osborne2, 11, 0.48027401e-1, False,
     (1.3, 0.65, 0.65, 0.7, 0.6, 3.0, 5.0, 7.0, 2.0, 4.5, 5.5), None),
    ("Steiner 2", steiner2, 12, 16.703838, False, None, None),
    ("Shell Dual", shell_dual, 15, 32.348679, False,
     (1e-3,) * 6 + (60.0,) + (1e-3,) * 8, None),
    ("Wong 3", wong3, 20, 93.90525, True,
     (2.0, 3.0, 5.0, 5.0, 1.0, 2.0, 7.0, 3.0, 6.0, 10.0,
      2.0, 2.0, 6.0, 15.0, 1.0, 2.0, 1.0, 2.0, 1.0, 3.0), None),
    ("Watson", watson, 20, 0.14743027e-7, True, (0.0,) * 20, None),
    ("Maxq", maxq, 20, 0.0, True,
     tuple(float(i) if i <= 10 else -float(i) for i in range(1, 21)), (0.0,) * 20),
    ("Maxl", maxl, 20, 0.0, True,
     tuple(float(i) if i <= 10 else -float(i) for i in range(1, 21)), (0.0,) * 20),
    ("Gofflin", goffin, 50, 0.0, True, tuple(i - 25.5 for i in range(1, 51)), (0.0,) * 50),
    ("MXHILB", mxhilb, 50, 0.0, True, (1.0,) * 50, (0.0,) * 50),
    ("L1HILB", l1hilb, 50, 0.0, True, (1.0,) * 50, (0.0,) * 50),
]

PROBLEM_NAMES = tuple(row[0] for row in _TABLE)

_REGISTRY = {}
for _name, _fn, _n, _fstar, _convex, _x0, _xstar in _TABLE:
    _REGISTRY[_name] = Objective(
        name=_name,
        dimension=_n,
        eval=_fn,
        metadata=ProblemMeta(_name, _n, _fstar, _convex, _x0, _xstar),
    )

_ALIASES = {"goffin": "Gofflin", "rosensuzuki": "Rosen_Suzuki", "polak6": "Polak6"}


def _key(name: str) -> str:
    return re.sub(r"[\s_\-]", "", name).lower()


_BY_KEY = {_key(k): k for k in _REGISTRY}
_BY_KEY.update(_ALIASES)


def canonical_name(name: str) -> str:
    """Resolve ``name`` (case, spaces, ``_`` and ``-`` ignored) to its
    registry spelling."""
    try:
        return _BY_KEY[_key(name)]
    except KeyError:
        raise KeyError(
            f"unknown problem {name!r}; valid names: {', '.join(PROBLEM_NAMES)}"
        ) from None


def get_problem(name: str) -> Objective:
    return _REGISTRY[canonical_name(name)]


def all_problems() -> list:
    return [_REGISTRY[k] for k in PROBLEM_NAMES]


def check_gradient(obj: Objective, x, h: float = 1e-6) -> float:
    """Max over coordinates of ``|fd_i - g_i| / max(1, ||g||_inf)`` with
    central differences of step ``h``.

    ``x`` should be a point of differentiability; callers perturb sample
    points slightly to move off kinks.
    """
    x = np.asarray(x, dtype=float)
    _, g = obj.eval(x)
    scale = max(1.0, float(np.max(np.abs(g))))
    err = 0.0
    for i in range(len(x)):
        e = np.zeros_like(x)
        e[i] = h
        fp, _ = obj.eval(x + e)
        fm, _ = obj.eval(x - e)
        fd = (fp - fm) / (2 * h)
        err = max(err, abs(fd - g[i]) / scale)
    return err

"""Smallest-norm point in the convex hull of finitely many vectors.

Primary solver is Wolfe's minimum-norm-point active-set method written on
the Gram matrix; a projected-gradient iteration on the simplex is kept as a
fallback for badly conditioned sets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

CERT_TOL = 1e-8


@dataclass
class HullSolution:
    g_star: np.ndarray
    lam: np.ndarray
    norm: float
    method: str = "active-set"


def project_simplex(v):
    """Euclidean projection of ``v`` onto the unit simplex."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(v) + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def certificate_gap(G, lam) -> float:
    """Largest violation of ``g_i . g* >= |g*|^2 - tol (1 + |g*|^2)``
    normalised by ``1 + |g*|^2``; non-positive means optimal."""
    G = np.atleast_2d(np.asarray(G, dtype=float))
    g = lam @ G
    nn = g @ g
    return float(np.max(nn - G @ g) / (1.0 + nn))


def _affine_minimizer(Q):
    """Weights summing to one that minimise ``mu' Q mu``.

    Uses ``Q^-1 1 / (1' Q^-1 1)`` when ``Q`` is well conditioned and least
    squares on the KKT system otherwise (rank deficiency is tolerated).
    """
    m = Q.shape[0]
    if np.linalg.cond(Q) < 1e10:
        w = np.linalg.solve(Q, np.ones(m))
        if np.all(np.isfinite(w)) and w.sum() != 0:
            return w / w.sum()
    K = np.zeros((m + 1, m + 1))
    K[:m, :m] = Q
    K[:m, m] = 1.0
    K[m, :m] = 1.0
    rhs = np.zeros(m + 1)
    rhs[m] = 1.0
    sol = np.linalg.lstsq(K, rhs, rcond=None)[0]
    mu = sol[:m]
    return mu / mu.sum()


def _wolfe(Q, tol=1e-12, max_major=None):
    k = Q.shape[0]
    max_major = max_major or 50 * k + 50
    lam = np.zeros(k)
    i0 = int(np.argmin(np.diag(Q)))
    lam[i0] = 1.0
    S = [i0]
    for _ in range(max_major):
        w = Q @ lam
        nn = lam @ w
        j = int(np.argmin(w))
        if w[j] >= nn - tol * max(nn, np.max(np.diag(Q))):
            return lam, True
        if j in S:
            return lam, False
        S.append(j)
        for _minor in range(len(S) + 5):
            idx = np.array(S)
            mu = _affine_minimizer(Q[np.ix_(idx, idx)])
            if np.all(mu > 1e-14):
                lam[:] = 0.0
                lam[idx] = mu
                break
            lam_s = lam[idx]
            neg = mu <= 1e-14
            denom = lam_s[neg] - mu[neg]
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = np.where(denom > 0, lam_s[neg] / denom, np.inf)
            theta = min(1.0, float(np.min(ratios)))
            new = lam_s + theta * (mu - lam_s)
            new[new < 1e-14] = 0.0
            if new.sum() <= 0:
                return lam, False
            new /= new.sum()
            lam[:] = 0.0
            lam[idx] = new
            S = [s for s, v in zip(S, new) if v > 0.0]
        else:
            return lam, False
    return lam, False


def _gram_gap(Q, lam) -> float:
    w = Q @ lam
    nn = lam @ w
    return float((nn - np.min(w)) / (1.0 + nn))


def _projected_gradient(Q, lam0, iters=20000, tol=1e-13, check_every=50):
    """Accelerated projected gradient on the simplex; stops once the
    certificate holds or the iterates stop moving."""
    L = max(float(np.linalg.eigvalsh(Q)[-1]), 1e-300)
    lam = lam0.copy()
    y = lam.copy()
    t = 1.0
    for it in range(1, iters + 1):
        new = project_simplex(y - (Q @ y) / L)
        t_next = 0.5 * (1 + np.sqrt(1 + 4 * t * t))
        y = new + ((t - 1) / t_next) * (new - lam)
        if np.max(np.abs(new - lam)) < tol:
            lam = new
            break
        lam, t = new, t_next
        if it % check_every == 0 and _gram_gap(Q, lam) <= 0.1 * CERT_TOL:
            break
    return lam


def min_norm_in_hull(G) -> HullSolution:
    """Minimum-norm element of ``conv{g_1, ..., g_k}`` for the rows of ``G``.

    Duplicates and affinely dependent rows are allowed.
    """
    G = np.asarray(G, dtype=float)
    if G.ndim == 1:
        G = G[None, :]
    if G.shape[0] == 0:
        raise ValueError("min_norm_in_hull needs at least one vector")
    k = G.shape[0]
    if k == 1:
        g = G[0].copy()
        return HullSolution(g, np.ones(1), float(np.linalg.norm(g)))
    scale = float(np.max(np.abs(G)))
    if scale == 0.0:
        return HullSolution(np.zeros(G.shape[1]), np.full(k, 1.0 / k), 0.0)
    Gs = G / scale
    Q = Gs @ Gs.T
    lam, _ = _wolfe(Q)
    method = "active-set"
    # the certificate, not the solver's own exit flag, decides acceptance
    if certificate_gap(Gs, lam) > CERT_TOL:
        alt = _projected_gradient(Q, lam)
        if alt @ Q @ alt < lam @ Q @ lam:
            lam = alt
            method = "projected-gradient"
    g = lam @ G
    return HullSolution(g, lam, float(np.linalg.norm(g)), method)

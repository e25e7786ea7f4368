"""Derivative-free constrained minimization by linear approximation.

A small COBYLA-style method: the objective and each constraint are modelled
by linear interpolation on a simplex of ``n + 1`` points, a step is taken
by minimizing the linear objective model inside a ball of radius ``rho``
subject to the linearized constraints, and ``rho`` shrinks geometrically
until it reaches ``tol``. Constraints are callables ``c(x)`` that must be
non-negative at a feasible point.

Everything is deterministic: no random numbers, fixed tie-breaking.
"""
from __future__ import annotations

from itertools import combinations
from typing import Callable, Sequence

import numpy as np

_ALPHA = 0.25  # minimum acceptable vertex height, in units of rho
_BETA = 2.1  # maximum acceptable vertex distance, in units of rho
_GAMMA = 0.5  # rho shrink factor


def _violation(c: np.ndarray) -> float:
    return float(max(0.0, -c.min())) if c.size else 0.0


def _min_linear_on_affine_ball(h, B, b, delta):
    """Minimize ``h.d`` subject to ``B d = b`` and ``|d| <= delta``."""
    n = h.size
    if B.shape[0] == 0:
        d0 = np.zeros(n)
        proj = np.eye(n)
    else:
        pinv = np.linalg.pinv(B)
        d0 = pinv @ b
        if np.max(np.abs(B @ d0 - b)) > 1e-10 * max(1.0, np.max(np.abs(b))):
            return None
        proj = np.eye(n) - pinv @ B
    r2 = delta * delta - d0 @ d0
    if r2 < -1e-14 * delta * delta:
        return None
    hn = proj @ h
    norm = np.linalg.norm(hn)
    if norm <= 1e-14 * max(1.0, np.linalg.norm(h)):
        return d0
    return d0 - np.sqrt(max(r2, 0.0)) * hn / norm


def _square_solve(B, b):
    try:
        if abs(np.linalg.det(B)) < 1e-14:
            return None
        return np.linalg.solve(B, b)
    except np.linalg.LinAlgError:
        return None


def trust_region_step(g, c, A, delta):
    """Step ``d`` for the linear subproblem.

    Minimizes ``g.d`` over ``|d| <= delta`` subject to ``c + A d >= 0``. When
    the linearized constraints cannot all be met inside the ball, the largest
    violation is first minimized and then held fixed while the objective is
    reduced.
    """
    n = g.size
    m = c.size
    if m == 0:
        ng = np.linalg.norm(g)
        return np.zeros(n) if ng == 0 else -delta * g / ng

    def worst(d):
        return float(np.max(-c - A @ d))

    # stage 1: least achievable violation
    slack = 0.0
    if worst(np.zeros(n)) > 0:
        best = worst(np.zeros(n))
        for k in range(1, min(m, n + 1) + 1):
            for S in combinations(range(m), k):
                j0, rest = S[0], S[1:]
                B = np.array([A[j] - A[j0] for j in rest]).reshape(len(rest), n)
                b = np.array([c[j0] - c[j] for j in rest])
                cands = []
                d = _min_linear_on_affine_ball(-A[j0], B, b, delta)
                if d is not None:
                    cands.append(d)
                if k == n + 1:
                    d = _square_solve(B, b)
                    if d is not None and np.linalg.norm(d) <= delta:
                        cands.append(d)
                for d in cands:
                    best = min(best, worst(d))
        slack = max(0.0, best)

    # stage 2: minimize the objective with violation at most ``slack``
    tol = 1e-12 * max(1.0, float(np.max(np.abs(c))), slack)
    rhs = -c - slack  # a_j . d >= rhs_j
    best_d, best_val = None, np.inf
    for k in range(0, min(m, n) + 1):
        for S in combinations(range(m), k):
            B = A[list(S)].reshape(k, n)
            b = rhs[list(S)]
            cands = []
            d = _min_linear_on_affine_ball(g, B, b, delta)
            if d is not None:
                cands.append(d)
            if k == n:
                d = _square_solve(B, b)
                if d is not None and np.linalg.norm(d) <= delta * (1 + 1e-12):
                    cands.append(d)
            for d in cands:
                if np.all(A @ d >= rhs - tol):
                    val = float(g @ d)
                    if val < best_val - 1e-15:
                        best_d, best_val = d, val
    return np.zeros(n) if best_d is None else best_d


def cobyla_minimize(
    objective: Callable[[np.ndarray], float],
    x0: Sequence[float],
    cfg,
    constraints: Sequence[Callable[[np.ndarray], float | np.ndarray]] = (),
    rhobeg: float = 0.5,
):
    """Minimize ``objective`` from ``x0``; return ``(x_star, f_star, evals)``.

    ``cfg`` supplies ``max_evals`` and ``tol`` (the final trust-region
    radius). The search stops when the radius has shrunk to ``tol`` or the
    evaluation budget is spent, and returns the best simplex vertex under
    the merit function ``f + mu * violation``.
    """
    x0 = np.asarray(x0, dtype=float).copy()
    n = x0.size
    max_evals = int(cfg.max_evals)
    rhoend = float(cfg.tol)
    if max_evals < n + 2:
        raise ValueError(f"max_evals must be at least {n + 2}")
    rho = max(float(rhobeg), rhoend)

    evals = 0

    def evaluate(x):
        nonlocal evals
        evals += 1
        f = float(objective(x))
        if constraints:
            cv = np.concatenate([np.atleast_1d(np.asarray(con(x), dtype=float)) for con in constraints])
        else:
            cv = np.zeros(0)
        return f, cv

    pts = [x0]
    for i in range(n):
        pts.append(x0 + rho * np.eye(n)[i])
    vals, cons = [], []
    for p in pts:
        f, cv = evaluate(p)
        vals.append(f)
        cons.append(cv)

    mu = 0.0

    def merit(i):
        return vals[i] + mu * _violation(cons[i])

    def base_index():
        # lowest merit; ties broken by violation then position
        return min(range(n + 1), key=lambda i: (merit(i), _violation(cons[i]), i))

    review = False
    while evals < max_evals:
        b = base_index()
        xb = pts[b]
        others = [i for i in range(n + 1) if i != b]
        D = np.array([pts[i] - xb for i in others])
        try:
            Dinv = np.linalg.inv(D)
        except np.linalg.LinAlgError:
            Dinv = np.linalg.pinv(D)
        dist = np.linalg.norm(D, axis=1)
        height = 1.0 / np.maximum(np.linalg.norm(Dinv, axis=0), 1e-300)
        far = dist > _BETA * rho
        flat = height < _ALPHA * rho
        geometry_ok = not (far.any() or flat.any())

        g = Dinv @ np.array([vals[i] - vals[b] for i in others])
        cb = cons[b]
        if cb.size:
            A = (Dinv @ np.array([cons[i] - cb for i in others])).T  # (m, n)
        else:
            A = np.zeros((0, n))

        if not geometry_ok:
            j = int(np.argmax(dist)) if far.any() else int(np.argmin(height))
            v = Dinv[:, j] / np.linalg.norm(Dinv[:, j])
            step = rho * v
            plus = g @ step + mu * (_violation(cb + A @ step) - _violation(cb))
            minus = -g @ step + mu * (_violation(cb - A @ step) - _violation(cb))
            if minus < plus:
                step = -step
            xn = xb + step
            f, cv = evaluate(xn)
            k = others[j]
            pts[k], vals[k], cons[k] = xn, f, cv
            continue

        if review:
            review = False
            if rho <= rhoend:
                break
            rho = _GAMMA * rho
            if rho <= 1.5 * rhoend:
                rho = rhoend
            continue

        d = trust_region_step(g, cb, A, rho)
        if np.linalg.norm(d) < 0.5 * rho:
            review = True
            continue

        pred_f = -float(g @ d)
        pred_v = _violation(cb) - _violation(cb + A @ d)
        if pred_v > 0:
            # the merit must reward this step even when the objective model is flat
            barmu = max(-pred_f, 0.0) / pred_v
            if mu < 1.5 * barmu:
                mu = 2.0 * barmu
            mu = max(mu, 1.0)
        pred = pred_f + mu * pred_v
        old_merit = merit(b)

        xn = xb + d
        f, cv = evaluate(xn)
        actual = old_merit - (f + mu * _violation(cv))
        ratio = actual / pred if pred > 0 else -1.0

        factor = np.abs(Dinv.T @ d)
        weight = factor * np.maximum(1.0, dist / rho) ** 3
        j = int(np.argmax(weight))
        if actual > 0 or weight[j] > 1.0:
            k = others[j]
            pts[k], vals[k], cons[k] = xn, f, cv
        if ratio < 0.1:
            review = True

    b = base_index()
    return pts[b].copy(), vals[b], evals

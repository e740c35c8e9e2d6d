"""Revised primal simplex (Bland's rule) for the bounded-Lipschitz LP.

The seminorm LP over a support of size n is

    maximize   sum_i c_i f_i
    subject to -1 <= f_i <= 1,   f_i - f_j <= D_ij   (i != j, D_ij < 2).

Rows with D_ij >= 2 are implied by the box and are dropped. We run the
simplex on the LP dual, which has only n equality rows:

    minimize   sum_i (u_i + l_i) + sum_ij D_ij p_ij
    subject to u_i - l_i + sum_j p_ij - sum_j p_ji = c_i,   u, l, p >= 0.

It is a transshipment problem with an obvious feasible basis (u_i or l_i per
row), so no phase one is needed. At optimality the simplex multipliers are
an optimal f for the original problem and are returned as the witness.

Two arithmetic back ends share the algorithm: numpy floats and exact
Fractions. Bland's rule (lowest-index entering column, lowest-index leaving
variable on ratio ties) rules out cycling on these highly degenerate
programs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import SolverError

PAIR_CUTOFF = 2
FLOAT_TOL = 1e-11


@dataclass(frozen=True)
class LPSolution:
    value: object
    witness: tuple
    iterations: int


def _columns(n: int, dist) -> list:
    """Ordered column list: u_0..u_{n-1}, l_0..l_{n-1}, then p_ij row-major."""
    cols = [("u", i, -1) for i in range(n)] + [("l", i, -1) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and dist[i][j] < PAIR_CUTOFF:
                cols.append(("p", i, j))
    return cols


def solve_blip_lp(coeffs: Sequence, dist: Sequence[Sequence], exact: bool = False) -> LPSolution:
    """Solve the seminorm LP for coefficients ``coeffs`` and distance matrix ``dist``."""
    n = len(coeffs)
    if n == 0:
        zero = Fraction(0) if exact else 0.0
        return LPSolution(zero, (), 0)
    if exact:
        return _solve_exact(list(coeffs), dist)
    return _solve_float(np.asarray(coeffs, dtype=float), np.asarray(dist, dtype=float))


def _max_iterations(n: int, ncols: int) -> int:
    return 1000 + 50 * (n + ncols)


def _solve_float(c: np.ndarray, dist: np.ndarray) -> LPSolution:
    n = c.shape[0]
    valid = dist < PAIR_CUTOFF
    np.fill_diagonal(valid, False)
    # reduced-cost pricing is vectorized over the full n x n block of p_ij
    pair_cost = np.where(valid, dist, np.inf)

    basis = np.where(c >= 0, np.arange(n), n + np.arange(n))
    binv = np.diag(np.where(c >= 0, 1.0, -1.0))
    xb = np.abs(c)
    cost_b = np.ones(n)
    scale = max(1.0, float(np.max(np.abs(c))))

    limit = _max_iterations(n, int(valid.sum()) + 2 * n)
    for it in range(limit):
        y = cost_b @ binv
        rc = np.concatenate((1.0 - y, 1.0 + y, (pair_cost - y[:, None] + y[None, :]).ravel()))
        negative = rc < -FLOAT_TOL
        q = int(negative.argmax())
        if not negative[q]:
            value = float(cost_b @ xb)
            return LPSolution(value, tuple(float(v) for v in y), it)

        if q < n:
            d = binv[:, q].copy()
            q_cost = 1.0
        elif q < 2 * n:
            d = -binv[:, q - n]
            q_cost = 1.0
        else:
            i, j = divmod(q - 2 * n, n)
            d = binv[:, i] - binv[:, j]
            q_cost = float(dist[i, j])

        rows = np.flatnonzero(d > 1e-12)
        if rows.size == 0:
            raise SolverError("LP dual unbounded; the distance matrix is not a valid input")
        ratios = xb[rows] / d[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12 * scale]
        r = int(ties[np.argmin(basis[ties])])
        t = xb[r] / d[r]

        xb = xb - t * d
        xb[r] = t
        xb[xb < 0] = 0.0
        basis[r] = q
        cost_b[r] = q_cost
        pivot_row = binv[r] / d[r]
        binv -= d[:, None] * pivot_row
        binv[r] = pivot_row
    raise SolverError(f"simplex did not converge within {limit} iterations")


def _solve_exact(c: list, dist) -> LPSolution:
    n = len(c)
    zero, one = Fraction(0), Fraction(1)
    c = [Fraction(v) for v in c]
    cols = _columns(n, dist)
    col_cost = [one if kind != "p" else Fraction(dist[i][j]) for kind, i, j in cols]

    basis = [i if c[i] >= 0 else n + i for i in range(n)]
    binv = [[zero] * n for _ in range(n)]
    for i in range(n):
        binv[i][i] = one if c[i] >= 0 else -one
    xb = [abs(v) for v in c]
    cost_b = [one] * n

    limit = _max_iterations(n, len(cols))
    for it in range(limit):
        y = [sum(cost_b[k] * binv[k][i] for k in range(n)) for i in range(n)]
        q = -1
        for idx, (kind, i, j) in enumerate(cols):
            if kind == "u":
                rc = one - y[i]
            elif kind == "l":
                rc = one + y[i]
            else:
                rc = col_cost[idx] - y[i] + y[j]
            if rc < 0:
                q = idx
                break
        if q < 0:
            value = sum((cost_b[k] * xb[k] for k in range(n)), zero)
            return LPSolution(value, tuple(y), it)

        kind, i, j = cols[q]
        if kind == "u":
            d = [binv[k][i] for k in range(n)]
        elif kind == "l":
            d = [-binv[k][i] for k in range(n)]
        else:
            d = [binv[k][i] - binv[k][j] for k in range(n)]

        r = -1
        best = None
        for k in range(n):
            if d[k] > 0:
                ratio = xb[k] / d[k]
                if best is None or ratio < best or (ratio == best and basis[k] < basis[r]):
                    best, r = ratio, k
        if r < 0:
            raise SolverError("LP dual unbounded; the distance matrix is not a valid input")

        t = best
        xb = [xb[k] - t * d[k] for k in range(n)]
        xb[r] = t
        basis[r] = q
        cost_b[r] = col_cost[q]
        pivot_row = [v / d[r] for v in binv[r]]
        for k in range(n):
            if k != r and d[k] != 0:
                dk = d[k]
                row = binv[k]
                binv[k] = [row[a] - dk * pivot_row[a] for a in range(n)]
        binv[r] = pivot_row
    raise SolverError(f"simplex did not converge within {limit} iterations")

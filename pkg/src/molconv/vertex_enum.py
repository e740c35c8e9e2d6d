"""Brute-force oracle for the seminorm LP: enumerate every vertex of the
feasible polytope and take the best objective value.

Independent of :mod:`molconv.simplex`. It keeps every pair row (no cutoff at
2) and solves each n-subset of constraint rows as a dense linear system.
Intended for supports of size <= 5.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

FEAS_TOL = 1e-9


def constraint_system(dist: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = dist.shape[0]
    rows, rhs = [], []
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        rows += [e, -e]
        rhs += [1.0, 1.0]
    for i in range(n):
        for j in range(n):
            if i != j:
                a = np.zeros(n)
                a[i], a[j] = 1.0, -1.0
                rows.append(a)
                rhs.append(dist[i, j])
    return np.array(rows), np.array(rhs)


def vertex_enumeration_norm(coeffs, dist) -> tuple[float, np.ndarray]:
    """Return ``(max_f c.f, argmax f)`` over the vertices of the polytope."""
    c = np.asarray(coeffs, dtype=float)
    dist = np.asarray(dist, dtype=float)
    n = c.shape[0]
    if n == 0:
        return 0.0, np.zeros(0)
    A, b = constraint_system(dist)
    subsets = np.array(list(combinations(range(A.shape[0]), n)))
    As = A[subsets]
    bs = b[subsets]
    dets = np.linalg.det(As)
    ok = np.abs(dets) > 1e-9
    As, bs = As[ok], bs[ok]
    verts = np.linalg.solve(As, bs[..., None])[..., 0]
    feasible = np.all(verts @ A.T <= b + FEAS_TOL, axis=1)
    verts = verts[feasible]
    values = verts @ c
    k = int(np.argmax(values))
    return float(values[k]), verts[k]

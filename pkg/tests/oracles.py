"""Independent reference computations used by the tests."""
import math
from itertools import product

import numpy as np
from scipy.integrate import quad


def geodesic_length(z: complex, w: complex) -> float:
    """Hyperbolic length of the half-plane geodesic from z to w by quadrature."""
    if math.isclose(z.real, w.real, abs_tol=1e-15):
        lo, hi = sorted((z.imag, w.imag))
        return quad(lambda y: 1.0 / y, lo, hi, epsabs=1e-13, epsrel=1e-13)[0]
    c = (abs(w) ** 2 - abs(z) ** 2) / (2.0 * (w.real - z.real))
    t1 = math.atan2(z.imag, z.real - c)
    t2 = math.atan2(w.imag, w.real - c)
    lo, hi = sorted((t1, t2))
    return quad(lambda t: 1.0 / math.sin(t), lo, hi, epsabs=1e-13, epsrel=1e-13)[0]


def affine_right_distance_oracle(g, h) -> float:
    """d_H(iota(g^-1), iota(h^-1)) with the inversion done by hand."""
    (a, b), (c, d) = g, h
    z = complex(-b / a, 1.0 / a)
    w = complex(-d / c, 1.0 / c)
    return geodesic_length(z, w)


def box_lp_grid_max(coeffs, dist, steps=9):
    """Grid search over [-1, 1]^n (used only as a lower-bound sanity check)."""
    n = len(coeffs)
    grid = np.linspace(-1, 1, steps)
    best = -math.inf
    for f in product(grid, repeat=n):
        if all(abs(f[i] - f[j]) <= dist[i][j] + 1e-12 for i in range(n) for j in range(n)):
            best = max(best, float(np.dot(coeffs, f)))
    return best

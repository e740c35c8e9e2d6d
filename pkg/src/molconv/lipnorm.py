"""Bounded-Lipschitz seminorms of molecular measures.

For a measure m and pseudometric D, ``||m||_D`` is the supremum of m(f) over
functions with ``|f| <= 1`` and ``|f(x) - f(y)| <= D(x, y)``. On a finite
support this is a finite LP; a feasible assignment on the support extends
to the whole group (see :func:`mcshane_extend`), so the LP value is the
seminorm.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DomainError, PreconditionError, SolverError
from .groups import GroupElement, multiply
from .measures import MolecularMeasure, SampledFunction, integrate
from .pseudometrics import Pseudometric, truncate
from .scalars import Scalar, all_exact, exact_sqrt, smin, to_json_scalar
from .simplex import solve_blip_lp
from .vertex_enum import vertex_enumeration_norm

CERTIFY_TOL = 1e-9
SOLVERS = ("lp-simplex", "closed-form-2pt", "vertex-enum")


@dataclass(frozen=True)
class NormReport:
    value: Scalar
    witness: SampledFunction
    solver: str
    exact: bool

    def to_dict(self) -> dict:
        return {
            "value": to_json_scalar(self.value),
            "witness": [to_json_scalar(v) for v in self.witness.values],
            "solver": self.solver,
            "exact": self.exact,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __float__(self):
        return float(self.value)


def _distance_matrix(m: MolecularMeasure, delta: Pseudometric):
    return delta.matrix(m.points)


def blip_norm(
    m: MolecularMeasure, delta: Pseudometric, method: str = "lp-simplex", exact: bool | None = None
) -> NormReport:
    """Evaluate ``||m||_delta`` and return the value with a certified witness.

    ``exact=None`` picks rational arithmetic whenever every coefficient and
    every needed distance is rational. ``method`` is one of ``lp-simplex``,
    ``closed-form-2pt`` (two-atom measures only) or ``vertex-enum``
    (brute force, small supports).
    """
    if method not in SOLVERS:
        raise DomainError(f"unknown solver {method!r}")
    if not m.is_canonical():
        raise DomainError("measure is not in canonical form")
    if m.is_empty():
        return NormReport(Fraction(0), SampledFunction((), ()), method, True)

    dist = _distance_matrix(m, delta)
    coeffs = list(m.coeffs)
    flat = [d for row in dist for d in row]
    can_be_exact = all_exact(coeffs) and all_exact(flat)
    if exact is None:
        exact = can_be_exact
    elif exact and not can_be_exact:
        raise PreconditionError("exact mode needs rational coefficients and distances")

    if method == "closed-form-2pt":
        if len(m) != 2:
            raise PreconditionError("the closed form applies to two-atom measures only")
        (x, a), (y, b) = m.atoms
        if a + b != 0:
            raise PreconditionError("the closed form needs a measure of the form c(δx - δy)")
        value = two_point_norm(a, x, y, delta)
        s = 1 if a > 0 else -1
        half = smin(Fraction(1), dist[0][1] / 2)
        witness = [s * half, -s * half]
        if not exact:
            value, witness = float(value), [float(w) for w in witness]
    elif method == "vertex-enum":
        fval, fvec = vertex_enumeration_norm([float(c) for c in coeffs], [[float(d) for d in r] for r in dist])
        value, witness, exact = fval, [float(v) for v in fvec], False
    else:
        sol = solve_blip_lp(coeffs, dist, exact=exact)
        value, witness = sol.value, list(sol.witness)

    witness_fn = SampledFunction(m.points, witness, bound=None)
    _certify(m, dist, value, witness_fn, exact)
    return NormReport(value, witness_fn, method, bool(exact))


def _certify(m, dist, value, witness, exact):
    tol = 0 if exact else CERTIFY_TOL
    w = witness.values
    n = len(w)
    for i in range(n):
        if abs(w[i]) > 1 + tol:
            raise SolverError(f"witness value {w[i]} leaves [-1, 1]")
        for j in range(i + 1, n):
            if abs(w[i] - w[j]) > dist[i][j] + tol:
                raise SolverError(f"witness breaks the Lipschitz bound at pair ({i}, {j})")
    paired = integrate(m, witness)
    scale = 1 if exact else 1 + float(m.total_variation)
    if abs(paired - value) > tol * scale:
        raise SolverError(f"witness pairs to {paired}, solver reported {value}")


def two_point_norm(c, x: GroupElement, y: GroupElement, delta: Pseudometric) -> Scalar:
    """``|c| * min(2, delta(x, y))``, the seminorm of ``c(δx - δy)``."""
    if c == 0:
        return Fraction(0)
    return abs(c) * smin(Fraction(2), delta(x, y))


class Membership(NamedTuple):
    member: bool
    violation: Scalar

    def __bool__(self):
        return self.member


def blip_membership(f: SampledFunction, delta: Pseudometric, r=1, tol: float = 0.0) -> Membership:
    """Is ``f`` in ``r * BLip_b(delta)`` on its support? Also reports the worst violation."""
    pts, vals = f.support, f.values
    worst = Fraction(0)
    for v in vals:
        worst = max(worst, abs(v) - r)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            gap = abs(vals[i] - vals[j]) - r * delta(pts[i], pts[j])
            if gap > worst:
                worst = gap
    return Membership(worst <= tol, worst)


def mcshane_extend(f: SampledFunction, delta: Pseudometric, x: GroupElement, check: bool = True) -> Scalar:
    """Clipped McShane extension ``max(-1, min(1, min_i f_i + delta(x, x_i)))``."""
    if not f.support:
        raise PreconditionError("cannot extend a function with empty support")
    if check:
        ok, worst = blip_membership(f, delta, 1, tol=CERTIFY_TOL)
        if not ok:
            raise PreconditionError(f"function is not in BLip_b on its support (violation {worst})")
    upper = min(v + delta(x, p) for p, v in zip(f.support, f.values))
    return max(-1, min(1, upper))


class McShaneExtension:
    """Callable wrapper around :func:`mcshane_extend`, validated once."""

    def __init__(self, f: SampledFunction, delta: Pseudometric):
        mcshane_extend(f, delta, f.support[0], check=True)
        self.f = f
        self.delta = delta

    def __call__(self, x: GroupElement) -> Scalar:
        return mcshane_extend(self.f, self.delta, x, check=False)


def normalized_sqrt_map(f: SampledFunction) -> SampledFunction:
    """``f / sqrt(||f||)`` with ``||f||`` the sup over the support; zero maps to itself."""
    norm = f.sup_norm
    if norm == 0:
        return f
    root = exact_sqrt(norm)
    return SampledFunction(f.support, tuple(v / root for v in f.values), bound=None)


def delta_m(
    m: MolecularMeasure, delta: Pseudometric, y: GroupElement, z: GroupElement, truncate_at=None
) -> Scalar:
    """``sum_i c_i delta(x_i y, x_i z) / sum_i c_i`` for a positive measure m.

    ``truncate_at`` replaces delta by ``min(truncate_at, delta)`` first.
    """
    _check_positive(m)
    if not delta.right_invariant:
        raise PreconditionError("delta_m needs a right-invariant pseudometric")
    if truncate_at is not None:
        delta = truncate(truncate_at, delta)
    total = sum((c * delta(multiply(x, y), multiply(x, z)) for x, c in m.atoms), Fraction(0))
    return total / m.total_variation


def _check_positive(m: MolecularMeasure):
    if m.is_empty():
        raise PreconditionError("delta_m needs a nonzero measure")
    if not m.is_positive():
        raise PreconditionError("delta_m needs a positive measure")


def delta_m_pseudometric(m: MolecularMeasure, delta: Pseudometric, truncate_at=2) -> Pseudometric:
    """The pseudometric ``(y, z) -> delta_m(m, delta, y, z)``, right-invariant."""
    _check_positive(m)
    if not delta.right_invariant:
        raise PreconditionError("delta_m needs a right-invariant pseudometric")
    base = truncate(truncate_at, delta) if truncate_at is not None else delta
    return Pseudometric(
        lambda y, z: delta_m(m, base, y, z),
        True,
        False,
        f"delta_m[{base.description}]",
        base.kinds,
        base.bound,
    )


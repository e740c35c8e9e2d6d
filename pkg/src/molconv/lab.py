"""Reproducible experiments: the j(δ(1/j²) - δ(0)) sequence, the convolution
inequality for bi-invariant metrics, discontinuity witnesses on non-SIN
groups, and separate-continuity bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, PreconditionError, SolverError
from .groups import REAL, Group, GroupElement, conjugate, element, multiply
from .lipnorm import (
    CERTIFY_TOL,
    Membership,
    blip_membership,
    blip_norm,
    delta_m_pseudometric,
    normalized_sqrt_map,
)
from .measures import MolecularMeasure, SampledFunction, combine, convolve, integrate, point_mass
from .pseudometrics import Pseudometric, make_pseudometric, scale, sqrt_of
from .scalars import Scalar, format_scalar, smin, to_json_scalar, to_scalar

SQRT2 = math.sqrt(2.0)


def _cell(value):
    if isinstance(value, GroupElement):
        return str(value)
    if isinstance(value, Pseudometric):
        return value.description
    if isinstance(value, (Fraction, int, float)) and not isinstance(value, bool):
        return to_json_scalar(value)
    return value


@dataclass
class ExperimentTable:
    columns: tuple
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add(self, *values):
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} cells, table has {len(self.columns)} columns")
        self.rows.append(tuple(values))

    def column(self, name: str) -> list:
        k = self.columns.index(name)
        return [row[k] for row in self.rows]

    def to_dict(self) -> dict:
        return {
            "columns": list(self.columns),
            "rows": [[_cell(v) for v in row] for row in self.rows],
            "metadata": {k: _cell(v) for k, v in self.metadata.items()},
        }

    def to_tsv(self) -> str:
        lines = [f"# {k}={format_scalar(_cell(v))}" for k, v in self.metadata.items()]
        lines.append("\t".join(self.columns))
        for row in self.rows:
            lines.append("\t".join(format_scalar(_cell(v)) if v is not None else "" for v in row))
        return "\n".join(lines) + "\n"

    def __len__(self):
        return len(self.rows)


# --- the j(δ(1/j²) - δ(0)) sequence ------------------------------------------

EXAMPLE31_COLUMNS = ("j", "norm_delta", "norm_sqrt_delta", "conv_norm", "pairing")


def example31_measure(j: int, exact: bool = True) -> MolecularMeasure:
    """``j (δ(1/j^2) - δ(0))`` on the real line."""
    h = Fraction(1, j * j) if exact else 1.0 / (j * j)
    zero = Fraction(0) if exact else 0.0
    jj = Fraction(j) if exact else float(j)
    return combine([(jj, point_mass(element(REAL, h))), (-jj, point_mass(element(REAL, zero)))])


def example31_test_function(j: int, support, exact: bool = True) -> SampledFunction:
    """``f_j(x) = min(1, |x - 1/j^2|)`` sampled on ``support``."""
    h = Fraction(1, j * j) if exact else 1.0 / (j * j)
    one = Fraction(1) if exact else 1.0
    return SampledFunction.from_callable(support, lambda x: smin(one, abs(x.payload - h)))


def run_example_31(j_max: int, exact: bool = True) -> ExperimentTable:
    if j_max < 1:
        raise DomainError("j_max must be at least 1")
    delta = make_pseudometric("euclidean", REAL)
    root = sqrt_of(delta)
    table = ExperimentTable(
        EXAMPLE31_COLUMNS,
        metadata={"group": "real", "pseudometric": "euclidean", "exact": exact},
    )
    for j in range(1, j_max + 1):
        m = example31_measure(j, exact)
        mm = convolve(m, m)
        f = example31_test_function(j, mm.points, exact)
        table.add(
            j,
            blip_norm(m, delta).value,
            blip_norm(m, root).value,
            blip_norm(mm, delta).value,
            integrate(mm, f),
        )
    return table


# --- convolution inequality for bi-invariant metrics -------------------------


@dataclass(frozen=True)
class Lemma25Report:
    lhs: Scalar
    rhs: float
    holds: bool
    norm_m_sqrt: Scalar
    norm_n_2sqrt: Scalar

    def to_dict(self):
        return {
            "lhs": to_json_scalar(self.lhs),
            "rhs": to_json_scalar(self.rhs),
            "holds": self.holds,
            "norm_m_sqrt": to_json_scalar(self.norm_m_sqrt),
            "norm_n_2sqrt": to_json_scalar(self.norm_n_2sqrt),
        }


def check_lemma_25(m: MolecularMeasure, n: MolecularMeasure, delta: Pseudometric) -> Lemma25Report:
    """Compare ``||m⋆n||_D`` with ``sqrt(2) ||m||_sqrt(D) ||n||_2sqrt(D)``."""
    if not delta.bi_invariant:
        raise PreconditionError(
            f"{delta.description} is not flagged bi-invariant; the inequality is not claimed"
        )
    lhs = blip_norm(convolve(m, n), delta).value
    root = sqrt_of(delta)
    a = blip_norm(m, root).value
    b = blip_norm(n, scale(2, root)).value
    rhs = SQRT2 * float(a) * float(b)
    return Lemma25Report(lhs, rhs, float(lhs) <= rhs + CERTIFY_TOL, a, b)


def check_lemma_24(f: SampledFunction, delta: Pseudometric, tol: float = 1e-12) -> Membership:
    """Membership of ``f / sqrt(||f||)`` in ``BLip_b(2 sqrt(delta))``."""
    return blip_membership(normalized_sqrt_map(f), scale(2, sqrt_of(delta)), 1, tol=tol)


def random_blip_function(rng, points: Sequence[GroupElement], delta: Pseudometric) -> SampledFunction:
    """A random member of ``BLip_b(delta)`` sampled on ``points``.

    Takes the clipped lower envelope of random cones ``a_k + delta(., x_k)``
    (always 1-Lipschitz) and shrinks it by a random factor in (0, 1].
    """
    points = tuple(points)
    if not points:
        return SampledFunction((), ())
    k = int(rng.integers(1, len(points) + 1))
    anchors = rng.choice(len(points), size=k, replace=False)
    heights = rng.uniform(-1.0, 1.0, size=k)
    shrink = float(rng.uniform(0.0, 1.0)) or 1.0
    values = []
    for p in points:
        low = min(float(h) + float(delta(p, points[a])) for a, h in zip(anchors, heights))
        values.append(shrink * max(-1.0, min(1.0, low)))
    return SampledFunction(points, values)


# --- discontinuity witnesses -------------------------------------------------


@dataclass(frozen=True)
class SearchGrid:
    xs: tuple
    vs: tuple

    def __post_init__(self):
        if not self.xs or not self.vs:
            raise DomainError("search budget is empty")


def _log_values(lo: int, hi: int, per_decade: int = 1) -> list[float]:
    steps = (hi - lo) * per_decade
    return [10.0 ** (lo + k / per_decade) for k in range(steps + 1)]


def default_grid(group: Group, per_decade: int = 1) -> SearchGrid:
    """Dilations 10^0..10^8 and translations 10^-8..10^0 (both signs), fixed order."""
    dil = _log_values(0, 8, per_decade)
    small = sorted(_log_values(-8, 0, per_decade), reverse=True)
    signed = [s for t in small for s in (t, -t)]
    if group.kind == "affine":
        xs = [element(group, (a, 0.0)) for a in dil]
        vs = [element(group, (1.0, s)) for s in signed]
    elif group.kind == "real":
        xs = [element(group, 0.0)] + [element(group, s * a) for a in dil for s in (1.0, -1.0)]
        vs = [element(group, s) for s in signed]
    elif group.kind == "vec":
        basis = [tuple(1.0 if i == k else 0.0 for i in range(group.dim)) for k in range(group.dim)]
        xs = [group.identity(exact=False)] + [
            element(group, tuple(a * c for c in e)) for a in dil for e in basis
        ]
        vs = [element(group, tuple(s * c for c in e)) for s in signed for e in basis]
    else:
        letters = [g for g in range(-group.dim, group.dim + 1) if g]
        words = [()] + [(g,) for g in letters]
        words += [(g, h) for g in letters for h in letters if g != -h]
        words = sorted(set(words), key=lambda w: (len(w), w))
        xs = [element(group, w) for w in words]
        vs = [element(group, w) for w in words if w]
    return SearchGrid(tuple(xs), tuple(vs))


@dataclass(frozen=True)
class WitnessReport:
    epsilon: Scalar
    x: GroupElement | None
    v: GroupElement | None
    m: MolecularMeasure | None
    n: MolecularMeasure | None
    norm_m_delta: Scalar | None
    norm_n_delta: Scalar | None
    norm_conv_theta: Scalar | None
    success: bool
    max_distortion: Scalar
    delta: str = ""
    theta: str = ""

    def to_dict(self):
        return {
            "epsilon": to_json_scalar(self.epsilon),
            "x": None if self.x is None else str(self.x),
            "v": None if self.v is None else str(self.v),
            "norm_m_delta": None if self.norm_m_delta is None else to_json_scalar(self.norm_m_delta),
            "norm_n_delta": None if self.norm_n_delta is None else to_json_scalar(self.norm_n_delta),
            "norm_conv_theta": None if self.norm_conv_theta is None else to_json_scalar(self.norm_conv_theta),
            "success": self.success,
            "max_distortion": to_json_scalar(self.max_distortion),
            "delta": self.delta,
            "theta": self.theta,
        }


def witness_measures(eps, x: GroupElement, v: GroupElement) -> tuple[MolecularMeasure, MolecularMeasure]:
    """``m = eps δ(x)`` and ``n = (δ(v) - δ(e)) / eps``."""
    e = x.group.identity(exact=v.exact)
    m = point_mass(x).scaled(eps)
    n = (point_mass(v) - point_mass(e)) / eps
    return m, n


def certify_witness(eps, x, v, delta: Pseudometric, theta: Pseudometric):
    """Build the witness pair and recompute every norm through the LP.

    Returns ``(m, n, ||m||_delta, ||n||_delta, ||m⋆n||_theta)``; raises
    SolverError when an LP value disagrees with its closed form.
    """
    m, n = witness_measures(eps, x, v)
    e = x.group.identity(exact=v.exact)
    norm_m = blip_norm(m, delta).value
    norm_n = blip_norm(n, delta).value
    conv = convolve(m, n)
    norm_conv = blip_norm(conv, theta).value
    closed = (
        abs(eps),
        smin(2, delta(v, e)) / eps,
        abs(conv.coeffs[0]) * smin(2, theta(multiply(x, v), x)) if len(conv) else 0,
    )
    for lp_val, cf in zip((norm_m, norm_n, norm_conv), closed):
        if abs(float(lp_val) - float(cf)) > CERTIFY_TOL:
            raise SolverError(f"LP value {lp_val} disagrees with closed form {cf}")
    return m, n, norm_m, norm_n, norm_conv


def sin_witness(
    group: Group,
    delta: Pseudometric,
    theta: Pseudometric,
    eps,
    grid: SearchGrid | None = None,
) -> WitnessReport:
    """Search for x, v with ``delta(v, e) < eps^2`` and ``theta(x v x^-1, e) >= 1``."""
    if not (delta.right_invariant and theta.right_invariant):
        raise PreconditionError("both pseudometrics must be right-invariant")
    eps = to_scalar(eps)
    if not eps > 0:
        raise DomainError("epsilon must be positive")
    if grid is None:
        grid = default_grid(group)
    e = group.identity(exact=False)
    best = (-1.0, None, None)
    for v in grid.vs:
        if not delta(v, e) < eps * eps:
            continue
        for x in grid.xs:
            dist = theta(conjugate(x, v), e)
            if dist > best[0]:
                best = (dist, x, v)
            if dist >= 1:
                m, n, nm, nn, nc = certify_witness(eps, x, v, delta, theta)
                ok = nm <= eps + CERTIFY_TOL and nn <= eps + CERTIFY_TOL and nc >= 1
                return WitnessReport(
                    eps, x, v, m, n, nm, nn, nc, ok, best[0], delta.description, theta.description
                )
    dist, x, v = best
    if x is None:
        return WitnessReport(
            eps, None, None, None, None, None, None, None, False, 0.0,
            delta.description, theta.description,
        )
    m, n, nm, nn, nc = certify_witness(eps, x, v, delta, theta)
    return WitnessReport(
        eps, x, v, m, n, nm, nn, nc, False, dist, delta.description, theta.description
    )


SCAN_COLUMNS = (
    "delta", "epsilon", "success", "x", "v",
    "norm_m_delta", "norm_n_delta", "norm_conv_theta", "max_distortion",
)


def default_catalog(theta_spec: str) -> list[str]:
    return [theta_spec, f"sqrt({theta_spec})", f"trunc(2,{theta_spec})", f"scale(4,{theta_spec})"]


def joint_continuity_scan(
    group: Group,
    catalog: Sequence,
    theta: Pseudometric,
    eps_list: Sequence,
    grid: SearchGrid | None = None,
) -> ExperimentTable:
    if not catalog:
        raise DomainError("catalog is empty")
    metrics = [make_pseudometric(spec, group) for spec in catalog]
    if grid is None:
        grid = default_grid(group)
    table = ExperimentTable(
        SCAN_COLUMNS, metadata={"group": group.tag, "theta": theta.description}
    )
    for delta in metrics:
        for eps in eps_list:
            rep = sin_witness(group, delta, theta, eps, grid)
            table.add(
                delta.description, rep.epsilon, rep.success, rep.x, rep.v,
                rep.norm_m_delta, rep.norm_n_delta, rep.norm_conv_theta, rep.max_distortion,
            )
    return table


# --- separate continuity -----------------------------------------------------

SEPARATE_COLUMNS = ("k", "norm_n_delta_m", "conv_norm", "bound", "holds")


def separate_continuity_demo(
    m: MolecularMeasure, delta: Pseudometric, sequence: Sequence[MolecularMeasure]
) -> ExperimentTable:
    """Tabulate ``||m⋆n_k||_delta`` against ``||m|| * ||n_k||_{delta_m}``."""
    if m.is_empty() or not m.is_positive():
        raise PreconditionError("separate_continuity_demo needs a nonzero positive measure m")
    dm = delta_m_pseudometric(m, delta, truncate_at=2)
    tv = m.total_variation
    table = ExperimentTable(
        SEPARATE_COLUMNS,
        metadata={"group": m.group.tag, "pseudometric": delta.description, "mass": tv},
    )
    for k, n in enumerate(sequence, start=1):
        if n.group != m.group:
            raise DomainError(f"sequence element {k} lives in {n.group.tag}, not {m.group.tag}")
        a = blip_norm(n, dm).value
        b = blip_norm(convolve(m, n), delta).value
        bound = tv * a
        table.add(k, a, b, bound, float(b) <= float(bound) + CERTIFY_TOL)
    return table


# --- random instances --------------------------------------------------------


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _random_word(rng, k: int, max_len: int) -> tuple:
    length = int(rng.integers(0, max_len + 1))
    word: list[int] = []
    while len(word) < length:
        g = int(rng.integers(1, k + 1)) * (1 if rng.random() < 0.5 else -1)
        if word and word[-1] == -g:
            continue
        word.append(g)
    return tuple(word)


def random_point(rng, group: Group, point_scale=1.0, exact: bool = False) -> GroupElement:
    kind = group.kind
    if kind == "free":
        return element(group, _random_word(rng, group.dim, max(1, int(point_scale))))
    if exact:
        den = 16
        top = max(1, int(round(point_scale * den)))

        def coord():
            return Fraction(int(rng.integers(-top, top + 1)), den)
    else:

        def coord():
            return float(rng.uniform(-point_scale, point_scale))

    if kind == "real":
        return element(group, coord())
    if kind == "vec":
        return element(group, tuple(coord() for _ in range(group.dim)))
    if exact:
        a = Fraction(int(rng.integers(1, 9)), 4)
    else:
        a = float(math.exp(rng.uniform(-point_scale, point_scale)))
    return element(group, (a, coord()))


def random_coeff(rng, coeff_scale=1.0, exact: bool = False) -> Scalar:
    if exact:
        den = 8
        top = max(1, int(round(coeff_scale * den)))
        return Fraction(int(rng.integers(-top, top + 1)), den)
    return float(rng.uniform(-coeff_scale, coeff_scale))


def random_measure(
    seed,
    group: Group,
    atom_count: int,
    coeff_scale=1.0,
    point_scale=1.0,
    exact: bool = False,
) -> MolecularMeasure:
    """Deterministic random measure; coefficients are symmetric around zero."""
    if atom_count < 0:
        raise DomainError("atom_count must be nonnegative")
    rng = _rng(seed)
    atoms = [
        (random_point(rng, group, point_scale, exact), random_coeff(rng, coeff_scale, exact))
        for _ in range(atom_count)
    ]
    return MolecularMeasure.from_atoms(group, atoms)


def random_positive_measure(seed, group: Group, atom_count: int, point_scale=1.0, exact=False):
    rng = _rng(seed)
    atoms = []
    for _ in range(max(1, atom_count)):
        c = Fraction(int(rng.integers(1, 9)), 4) if exact else float(rng.uniform(0.1, 2.0))
        atoms.append((random_point(rng, group, point_scale, exact), c))
    return MolecularMeasure.from_atoms(group, atoms)


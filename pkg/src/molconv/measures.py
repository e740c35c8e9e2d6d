"""Molecular measures (finite signed combinations of point masses) and
finitely sampled functions on a group."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .errors import DomainError
from .groups import Group, GroupElement, multiply
from .scalars import Scalar, to_scalar

Atom = tuple  # (GroupElement, coefficient)


def _key(g: GroupElement, merge_tol: float | None):
    if merge_tol is None:
        return g.payload
    if g.group.kind == "free":
        return g.payload
    vals = (g.payload,) if g.group.kind == "real" else g.payload
    return tuple(round(float(v) / merge_tol) for v in vals)


def _canonical_atoms(atoms: Iterable[Atom], merge_tol: float | None = None) -> tuple:
    merged: dict = {}
    points: dict = {}
    for point, coeff in atoms:
        key = _key(point, merge_tol)
        if key in merged:
            merged[key] = merged[key] + coeff
        else:
            merged[key] = coeff
            points[key] = point
    kept = [(points[k], c) for k, c in merged.items() if c != 0]
    kept.sort(key=lambda atom: atom[0].sort_key())
    return tuple(kept)


@dataclass(frozen=True)
class MolecularMeasure:
    """Finite signed sum of point masses on one group.

    Build values through :func:`point_mass`, :func:`combine`,
    :meth:`from_atoms` or the arithmetic operators; these always return the
    canonical form (distinct points sorted by payload, no zero coefficients).
    """

    group: Group
    atoms: tuple = ()

    @classmethod
    def from_atoms(cls, group: Group, atoms: Iterable[Atom], merge_tol: float | None = None):
        checked = []
        for point, coeff in atoms:
            if point.group != group:
                raise DomainError(f"atom at {point} does not lie in {group.tag}")
            checked.append((point, to_scalar(coeff)))
        return cls(group, _canonical_atoms(checked, merge_tol))

    @classmethod
    def zero(cls, group: Group):
        return cls(group, ())

    @property
    def points(self) -> tuple:
        return tuple(p for p, _ in self.atoms)

    @property
    def coeffs(self) -> tuple:
        return tuple(c for _, c in self.atoms)

    def is_canonical(self) -> bool:
        return self.atoms == _canonical_atoms(self.atoms)

    def is_empty(self) -> bool:
        return not self.atoms

    def is_positive(self) -> bool:
        return all(c > 0 for c in self.coeffs)

    @property
    def total_variation(self) -> Scalar:
        return sum((abs(c) for c in self.coeffs), Fraction(0))

    @property
    def mass(self) -> Scalar:
        return sum(self.coeffs, Fraction(0))

    @property
    def exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs) and all(
            p.exact for p in self.points
        )

    def scaled(self, c) -> MolecularMeasure:
        c = to_scalar(c)
        return MolecularMeasure(self.group, _canonical_atoms((p, c * a) for p, a in self.atoms))

    def __add__(self, other: MolecularMeasure) -> MolecularMeasure:
        return combine([(1, self), (1, other)])

    def __sub__(self, other: MolecularMeasure) -> MolecularMeasure:
        return combine([(1, self), (-1, other)])

    def __neg__(self) -> MolecularMeasure:
        return self.scaled(-1)

    def __mul__(self, c) -> MolecularMeasure:
        return self.scaled(c)

    __rmul__ = __mul__

    def __truediv__(self, c) -> MolecularMeasure:
        return self.scaled(1 / to_scalar(c))

    def __matmul__(self, other: MolecularMeasure) -> MolecularMeasure:
        return convolve(self, other)

    def __len__(self):
        return len(self.atoms)

    def __str__(self):
        if not self.atoms:
            return "0"
        return " + ".join(f"{c}*δ({p})" for p, c in self.atoms)


def point_mass(x: GroupElement) -> MolecularMeasure:
    return MolecularMeasure(x.group, ((x, Fraction(1)),))


def combine(terms: Sequence[tuple], merge_tol: float | None = None) -> MolecularMeasure:
    """Signed linear combination ``sum_k c_k * m_k`` of measures over one group."""
    terms = list(terms)
    if not terms:
        raise DomainError("combine needs at least one term to know the group")
    group = terms[0][1].group
    atoms = []
    for c, m in terms:
        if m.group != group:
            raise DomainError(f"cannot combine measures on {group.tag} and {m.group.tag}")
        c = to_scalar(c)
        atoms.extend((p, c * a) for p, a in m.atoms)
    return MolecularMeasure(group, _canonical_atoms(atoms, merge_tol))


def convolve(m: MolecularMeasure, n: MolecularMeasure, merge_tol: float | None = None) -> MolecularMeasure:
    """``sum_i sum_j c_i d_j δ(x_i y_j)``."""
    if m.group != n.group:
        raise DomainError(f"cannot convolve measures on {m.group.tag} and {n.group.tag}")
    atoms = [(multiply(x, y), c * d) for x, c in m.atoms for y, d in n.atoms]
    return MolecularMeasure(m.group, _canonical_atoms(atoms, merge_tol))


@dataclass(frozen=True)
class SampledFunction:
    """Real values on a finite support, capped by ``bound`` in absolute value."""

    support: tuple
    values: tuple
    bound: Scalar | None = Fraction(1)

    def __post_init__(self):
        support = tuple(self.support)
        values = tuple(to_scalar(v) for v in self.values)
        if len(support) != len(values):
            raise DomainError("support and values must have the same length")
        if len({p.payload for p in support}) != len(support):
            raise DomainError("support points must be distinct")
        if self.bound is not None:
            for p, v in zip(support, values):
                if abs(v) > self.bound:
                    raise DomainError(f"value {v} at {p} exceeds the declared bound {self.bound}")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_lookup", {p.payload: v for p, v in zip(support, values)})

    @classmethod
    def from_callable(cls, support: Iterable[GroupElement], fn: Callable, bound=Fraction(1)):
        support = tuple(support)
        return cls(support, tuple(fn(p) for p in support), bound)

    def __call__(self, x: GroupElement) -> Scalar:
        try:
            return self._lookup[x.payload]
        except KeyError:
            raise DomainError(f"function is not sampled at {x}") from None

    def __contains__(self, x: GroupElement) -> bool:
        return x.payload in self._lookup

    @property
    def sup_norm(self) -> Scalar:
        return max((abs(v) for v in self.values), default=Fraction(0))

    def __len__(self):
        return len(self.support)


FunctionLike = Union[SampledFunction, Callable[[GroupElement], Scalar]]


def integrate(m: MolecularMeasure, f: FunctionLike) -> Scalar:
    """``m(f) = sum_i c_i f(x_i)``."""
    return sum((c * f(x) for x, c in m.atoms), Fraction(0))


def bullet(n: MolecularMeasure, f: FunctionLike, x: GroupElement) -> Scalar:
    """The left action ``(n • f)(x) = n(y -> f(x y))``."""
    if x.group != n.group:
        raise DomainError(f"point {x} is not in {n.group.tag}")
    return sum((d * f(multiply(x, y)) for y, d in n.atoms), Fraction(0))


def convolve_pairing(m: MolecularMeasure, n: MolecularMeasure, f: FunctionLike) -> Scalar:
    """``m(n • f)``: the pairing of ``m ⋆ n`` with ``f`` without forming the product."""
    return integrate(m, lambda x: bullet(n, f, x))


def reversed_pairing(m: MolecularMeasure, n: MolecularMeasure, f: FunctionLike) -> Scalar:
    """``n(y -> m(x -> f(x y)))``, the other order of the double sum."""
    return integrate(n, lambda y: integrate(m, lambda x: f(multiply(x, y))))

"""Pseudometrics on the concrete groups, their transforms, and conjugation probes.

Invariance flags are declared by construction and never inferred; the test
suite samples them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DataError, DomainError, PreconditionError
from .groups import GroupElement, conjugate, identity_like, inverse, multiply
from .scalars import Scalar, exact_sqrt, smin, to_scalar

Evaluator = Callable[[GroupElement, GroupElement], Scalar]


@dataclass(frozen=True)
class Pseudometric:
    evaluator: Evaluator = field(repr=False, compare=False)
    right_invariant: bool
    bi_invariant: bool
    description: str
    kinds: frozenset | None = None  # group kinds this metric accepts; None means any
    bound: Scalar | None = None  # known upper bound, if any

    def __call__(self, x: GroupElement, y: GroupElement) -> Scalar:
        if x.group != y.group:
            raise DomainError(f"group mismatch: {x.group.tag} vs {y.group.tag}")
        self.check_group(x)
        return self.evaluator(x, y)

    def check_group(self, g: GroupElement):
        if self.kinds is not None and g.group.kind not in self.kinds:
            raise DomainError(f"pseudometric {self.description} is not defined on {g.group.tag}")

    def matrix(self, points: Sequence[GroupElement]) -> list[list[Scalar]]:
        """Symmetric matrix of pairwise distances with a zero diagonal.

        Raises DataError on negative or NaN values.
        """
        n = len(points)
        zero = Fraction(0)
        out = [[zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                d = self(points[i], points[j])
                if d != d or d < 0:
                    raise DataError(
                        f"pseudometric {self.description} returned {d!r} on "
                        f"({points[i]}, {points[j]})"
                    )
                out[i][j] = out[j][i] = d
        return out

    def __str__(self):
        return self.description


@dataclass(frozen=True)
class GroupNorm:
    """A function N with N(e) = 0, N(g) = N(g^-1), N(gh) <= N(g) + N(h)."""

    evaluator: Callable[[GroupElement], Scalar] = field(repr=False, compare=False)
    description: str
    conjugation_invariant: bool = False

    def __call__(self, g: GroupElement) -> Scalar:
        return self.evaluator(g)


# --- base metrics ----------------------------------------------------------


def _euclidean(x: GroupElement, y: GroupElement) -> Scalar:
    if x.group.kind == "real":
        return abs(x.payload - y.payload)
    total = sum((a - b) * (a - b) for a, b in zip(x.payload, y.payload))
    return exact_sqrt(total)


def _discrete2(x: GroupElement, y: GroupElement) -> Scalar:
    return Fraction(0) if x.payload == y.payload else Fraction(2)


def _word(x: GroupElement, y: GroupElement) -> Scalar:
    return Fraction(len(multiply(x, inverse(y)).payload))


def half_plane_distance(z: complex, w: complex) -> float:
    """Hyperbolic distance in the upper half-plane.

    Uses ``2 asinh(|z - w| / (2 sqrt(Im z Im w)))``, which equals
    ``arccosh(1 + |z - w|^2 / (2 Im z Im w))`` without the cancellation near 0.
    """
    return 2.0 * math.asinh(abs(z - w) / (2.0 * math.sqrt(z.imag * w.imag)))


def affine_to_half_plane(g: GroupElement) -> complex:
    a, b = g.payload
    return complex(float(b), float(a))


def _affine_hyp_right(x: GroupElement, y: GroupElement) -> float:
    if x.payload == y.payload:
        return 0.0
    return half_plane_distance(affine_to_half_plane(inverse(x)), affine_to_half_plane(inverse(y)))


def euclidean() -> Pseudometric:
    return Pseudometric(_euclidean, True, True, "euclidean", frozenset({"real", "vec"}))


def discrete2() -> Pseudometric:
    return Pseudometric(_discrete2, True, True, "discrete2", None, Fraction(2))


def word_metric() -> Pseudometric:
    return Pseudometric(_word, True, False, "word", frozenset({"free"}))


def affine_hyp_right() -> Pseudometric:
    return Pseudometric(_affine_hyp_right, True, False, "affine-hyp-right", frozenset({"affine"}))


def from_group_norm(norm: GroupNorm) -> Pseudometric:
    def evaluator(x, y):
        return norm(multiply(x, inverse(y)))

    return Pseudometric(
        evaluator, True, norm.conjugation_invariant, f"norm[{norm.description}]"
    )


# --- transforms ------------------------------------------------------------


def sqrt_of(base: Pseudometric) -> Pseudometric:
    bound = None if base.bound is None else exact_sqrt(base.bound)
    return Pseudometric(
        lambda x, y: exact_sqrt(base(x, y)),
        base.right_invariant,
        base.bi_invariant,
        f"sqrt({base.description})",
        base.kinds,
        bound,
    )


def scale(c, base: Pseudometric) -> Pseudometric:
    c = to_scalar(c)
    if not c > 0:
        raise DomainError(f"scale factor must be positive, got {c}")
    bound = None if base.bound is None else c * base.bound
    return Pseudometric(
        lambda x, y: c * base(x, y),
        base.right_invariant,
        base.bi_invariant,
        f"scale({c},{base.description})",
        base.kinds,
        bound,
    )


def truncate(c, base: Pseudometric) -> Pseudometric:
    c = to_scalar(c)
    if not c > 0:
        raise DomainError(f"truncation level must be positive, got {c}")
    bound = c if base.bound is None else smin(c, base.bound)
    return Pseudometric(
        lambda x, y: smin(c, base(x, y)),
        base.right_invariant,
        base.bi_invariant,
        f"trunc({c},{base.description})",
        base.kinds,
        bound,
    )


def series_min(family: Sequence[Pseudometric]) -> Pseudometric:
    """``sum_j 2^-j min(family[j], 1)`` over the finite family (j from 0)."""
    family = tuple(family)
    if not family:
        raise DomainError("series needs at least one pseudometric")
    one = Fraction(1)
    weights = [Fraction(1, 2**j) for j in range(len(family))]

    def evaluator(x, y):
        return sum(w * smin(d(x, y), one) for w, d in zip(weights, family))

    kinds = None
    for d in family:
        if d.kinds is not None:
            kinds = d.kinds if kinds is None else kinds & d.kinds
    return Pseudometric(
        evaluator,
        all(d.right_invariant for d in family),
        all(d.bi_invariant for d in family),
        "series(" + ";".join(d.description for d in family) + ")",
        kinds,
        sum(weights),
    )


# --- text specs ------------------------------------------------------------

_BASE = {
    "euclidean": euclidean,
    "discrete2": discrete2,
    "word": word_metric,
    "affine-hyp-right": affine_hyp_right,
}


class _SpecParser:
    def __init__(self, text: str):
        self.text = text.replace(" ", "")
        self.pos = 0

    def fail(self, msg):
        raise DomainError(f"bad pseudometric spec {self.text!r} at {self.pos}: {msg}")

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def name(self):
        start = self.pos
        while self.peek() and (self.peek().isalnum() or self.peek() == "-"):
            self.pos += 1
        if start == self.pos:
            self.fail("expected a name")
        return self.text[start:self.pos].lower()

    def number(self):
        start = self.pos
        while self.peek() and self.peek() not in ",;)":
            self.pos += 1
        try:
            return Fraction(self.text[start:self.pos])
        except (ValueError, ZeroDivisionError):
            self.fail("expected a number")

    def spec(self) -> Pseudometric:
        name = self.name()
        if name in _BASE:
            return _BASE[name]()
        if name not in ("sqrt", "scale", "trunc", "series"):
            self.fail(f"unknown pseudometric {name!r}")
        self.expect("(")
        if name == "sqrt":
            out = sqrt_of(self.spec())
        elif name in ("scale", "trunc"):
            c = self.number()
            self.expect(",")
            inner = self.spec()
            out = scale(c, inner) if name == "scale" else truncate(c, inner)
        else:
            family = [self.spec()]
            while self.peek() == ";":
                self.pos += 1
                family.append(self.spec())
            out = series_min(family)
        self.expect(")")
        return out

    def parse(self):
        out = self.spec()
        if self.pos != len(self.text):
            self.fail("trailing characters")
        return out


def parse_pseudometric(text: str) -> Pseudometric:
    """Parse the text form, e.g. ``"scale(4,sqrt(affine-hyp-right))"``."""
    return _SpecParser(text).parse()


def make_pseudometric(spec, group=None) -> Pseudometric:
    """Build a pseudometric from a text spec, a GroupNorm, or an existing Pseudometric.

    When ``group`` is given, the metric must be defined on it.
    """
    if isinstance(spec, Pseudometric):
        pm = spec
    elif isinstance(spec, GroupNorm):
        pm = from_group_norm(spec)
    elif isinstance(spec, str):
        pm = parse_pseudometric(spec)
    else:
        raise DomainError(f"cannot build a pseudometric from {spec!r}")
    if group is not None and pm.kinds is not None and group.kind not in pm.kinds:
        raise DomainError(f"pseudometric {pm.description} is not defined on {group.tag}")
    return pm


def distortion_probe(
    delta: Pseudometric, v: GroupElement, probes: Sequence[GroupElement]
) -> Scalar:
    """Largest distance from the identity among the conjugates ``x v x^-1``."""
    if not delta.right_invariant:
        raise PreconditionError("distortion_probe needs a right-invariant pseudometric")
    if not probes:
        raise DomainError("probe list is empty")
    e = identity_like(v)
    return max(delta(conjugate(x, v), e) for x in probes)

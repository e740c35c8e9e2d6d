"""Concrete groups: the real line, real vector spaces, the affine group of the
line, and free groups on finitely many generators.

Elements are immutable values. Payloads are normalized on construction so
that equal group elements compare (and hash) equal:

* ``real``: a scalar (``Fraction`` for exact mode, ``float`` otherwise)
* ``vec:n``: a tuple of ``n`` scalars
* ``affine``: a pair ``(a, b)`` with ``a > 0``, the map ``t -> a*t + b``
* ``free:k``: a reduced word, stored as a tuple of nonzero ints where
  ``+i`` is the i-th generator and ``-i`` its inverse
"""
from __future__ import annotations

import re
import string
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .scalars import Scalar, to_scalar

KINDS = ("real", "vec", "affine", "free")


@dataclass(frozen=True)
class Group:
    kind: str
    dim: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown group kind {self.kind!r}")
        if self.dim < 1:
            raise DomainError("group dimension must be positive")
        if self.kind == "free" and self.dim > 26:
            raise DomainError("free groups support at most 26 generators")

    @property
    def tag(self) -> str:
        if self.kind in ("vec", "free"):
            return f"{self.kind}:{self.dim}"
        return self.kind

    @property
    def abelian(self) -> bool:
        return self.kind in ("real", "vec") or (self.kind == "free" and self.dim == 1)

    def identity(self, exact: bool = True) -> GroupElement:
        zero = Fraction(0) if exact else 0.0
        one = Fraction(1) if exact else 1.0
        if self.kind == "real":
            return GroupElement(self, zero)
        if self.kind == "vec":
            return GroupElement(self, (zero,) * self.dim)
        if self.kind == "affine":
            return GroupElement(self, (one, zero))
        return GroupElement(self, ())

    def element(self, payload) -> GroupElement:
        return GroupElement(self, payload)

    def __str__(self):
        return self.tag


REAL = Group("real")
AFFINE = Group("affine")


def real_vector(n: int) -> Group:
    return Group("vec", n)


def free_group(k: int) -> Group:
    return Group("free", k)


def parse_group(tag: str) -> Group:
    """Parse ``real``, ``vec:N``, ``affine`` or ``free:K`` (``vecN``/``freeK`` also accepted)."""
    text = tag.strip().lower()
    aliases = {"real": "real", "realline": "real", "r": "real", "affine": "affine", "aff": "affine"}
    if text in aliases:
        return Group(aliases[text])
    m = re.fullmatch(r"(vec|realvector|free|discretefree)[:(]?(\d+)\)?", text)
    if not m:
        raise DomainError(f"unknown group tag {tag!r}")
    kind = "vec" if m.group(1) in ("vec", "realvector") else "free"
    return Group(kind, int(m.group(2)))


def _reduce(word) -> tuple:
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


_WORD_TOKEN = re.compile(r"([a-z])(⁻¹|\^-1|\^\{-1\})?")


def parse_word(text: str, k: int | None = None) -> tuple:
    """Parse a word such as ``"ab⁻¹a"`` (or ``"ab^-1a"``); ``"e"``/``""`` is the identity."""
    text = text.replace(" ", "")
    if text in ("", "e", "1"):
        return ()
    letters = []
    pos = 0
    while pos < len(text):
        m = _WORD_TOKEN.match(text, pos)
        if not m:
            raise DomainError(f"malformed word {text!r} at position {pos}")
        gen = ord(m.group(1)) - ord("a") + 1
        if k is not None and gen > k:
            raise DomainError(f"generator {m.group(1)!r} outside free group of rank {k}")
        letters.append(-gen if m.group(2) else gen)
        pos = m.end()
    return tuple(letters)


def format_word(word: tuple, ascii_only: bool = True) -> str:
    if not word:
        return "e"
    inv = "^-1" if ascii_only else "⁻¹"
    return "".join(
        string.ascii_lowercase[abs(g) - 1] + ("" if g > 0 else inv) for g in word
    )


@dataclass(frozen=True)
class GroupElement:
    group: Group
    payload: object

    def __post_init__(self):
        object.__setattr__(self, "payload", _normalize(self.group, self.payload))

    @property
    def exact(self) -> bool:
        kind = self.group.kind
        if kind == "free":
            return True
        vals = (self.payload,) if kind == "real" else self.payload
        return all(isinstance(v, Fraction) for v in vals)

    def __mul__(self, other: GroupElement) -> GroupElement:
        return multiply(self, other)

    def inv(self) -> GroupElement:
        return inverse(self)

    def __str__(self):
        return format_payload(self)

    def sort_key(self):
        kind = self.group.kind
        if kind == "real":
            return (self.payload,)
        return tuple(self.payload)


def _normalize(group: Group, payload):
    kind = group.kind
    try:
        if kind == "real":
            if isinstance(payload, (tuple, list)):
                if len(payload) != 1:
                    raise DomainError("real payload must be a scalar")
                payload = payload[0]
            return to_scalar(payload)
        if kind == "vec":
            if not isinstance(payload, (tuple, list)) or len(payload) != group.dim:
                raise DomainError(f"vec:{group.dim} payload must have {group.dim} coordinates")
            return tuple(to_scalar(v) for v in payload)
        if kind == "affine":
            if not isinstance(payload, (tuple, list)) or len(payload) != 2:
                raise DomainError("affine payload must be a pair (a, b)")
            a, b = to_scalar(payload[0]), to_scalar(payload[1])
            if not a > 0:
                raise DomainError(f"affine payload needs a > 0, got a={a}")
            return (a, b)
    except TypeError as exc:
        raise DomainError(str(exc)) from exc
    # free group
    if isinstance(payload, str):
        payload = parse_word(payload, group.dim)
    word = tuple(int(g) for g in payload)
    for g in word:
        if g == 0 or abs(g) > group.dim:
            raise DomainError(f"letter {g} outside free group of rank {group.dim}")
    if _reduce(word) != word:
        raise DomainError(f"word {format_word(word)} is not reduced")
    return word


def element(group: Group, payload) -> GroupElement:
    """Build an element; free-group words given as strings are reduced first."""
    if group.kind == "free":
        if isinstance(payload, str):
            payload = parse_word(payload, group.dim)
        payload = _reduce(tuple(payload))
    return GroupElement(group, payload)


def format_payload(g: GroupElement) -> str:
    kind = g.group.kind
    if kind == "real":
        return str(g.payload)
    if kind == "free":
        return format_word(g.payload)
    return "(" + ", ".join(str(v) for v in g.payload) + ")"


def _check_same(g: GroupElement, h: GroupElement):
    if g.group != h.group:
        raise DomainError(f"group mismatch: {g.group.tag} vs {h.group.tag}")


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    _check_same(g, h)
    kind = g.group.kind
    if kind == "real":
        return GroupElement(g.group, g.payload + h.payload)
    if kind == "vec":
        return GroupElement(g.group, tuple(a + b for a, b in zip(g.payload, h.payload)))
    if kind == "affine":
        (a, b), (c, d) = g.payload, h.payload
        return GroupElement(g.group, (a * c, a * d + b))
    return GroupElement(g.group, _reduce(g.payload + h.payload))


def inverse(g: GroupElement) -> GroupElement:
    kind = g.group.kind
    if kind == "real":
        return GroupElement(g.group, -g.payload)
    if kind == "vec":
        return GroupElement(g.group, tuple(-v for v in g.payload))
    if kind == "affine":
        a, b = g.payload
        return GroupElement(g.group, (1 / a, -b / a))
    return GroupElement(g.group, tuple(-x for x in reversed(g.payload)))


def conjugate(x: GroupElement, v: GroupElement) -> GroupElement:
    """Return ``x * v * x^-1``."""
    _check_same(x, v)
    if x.group.kind in ("real", "vec"):
        # exact identity; avoids (x + v) - x rounding for large x
        return v
    return multiply(multiply(x, v), inverse(x))


def identity_like(g: GroupElement) -> GroupElement:
    return g.group.identity(exact=g.exact)


def word_length(g: GroupElement) -> int:
    if g.group.kind != "free":
        raise DomainError("word length is defined on free groups only")
    return len(g.payload)


def payload_scalars(g: GroupElement) -> tuple[Scalar, ...]:
    kind = g.group.kind
    if kind == "real":
        return (g.payload,)
    if kind == "free":
        raise DomainError("free-group payloads are words, not scalars")
    return tuple(g.payload)

"""Scalar helpers for mixed exact (Fraction) / float arithmetic.

Exact values are ``fractions.Fraction``; everything else is a Python float.
Integers are promoted to ``Fraction`` so that integer input stays exact.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational, Real
from typing import Union

Scalar = Union[Fraction, float]


def to_scalar(value) -> Scalar:
    """Coerce ``value`` to Fraction (ints, Fractions, "p/q" strings) or float."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, Real):
        v = float(value)
        return 0.0 if v == 0.0 else v
    raise TypeError(f"not a real scalar: {value!r}")


def is_exact(value) -> bool:
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def exact_sqrt(value: Scalar) -> Scalar:
    """Square root that stays rational when ``value`` is a rational square."""
    if value < 0:
        raise ValueError("square root of a negative number")
    if isinstance(value, Fraction):
        p, q = value.numerator, value.denominator
        rp, rq = math.isqrt(p), math.isqrt(q)
        if rp * rp == p and rq * rq == q:
            return Fraction(rp, rq)
        return math.sqrt(float(value))
    return math.sqrt(value)


def smin(a: Scalar, b: Scalar) -> Scalar:
    return a if a <= b else b


def sign(value: Scalar) -> int:
    return (value > 0) - (value < 0)


def to_json_scalar(value):
    """Fractions become ints (when integral) or "p/q" strings; floats pass through."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    return float(value)


def from_json_scalar(value) -> Scalar:
    """Inverse of :func:`to_json_scalar`. JSON integers are read as exact."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return to_scalar(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"not a scalar literal: {value!r}")


def format_scalar(value) -> str:
    """Text form used in TSV output."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)

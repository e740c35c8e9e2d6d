from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from molconv.errors import DomainError
from molconv.groups import (
    AFFINE,
    REAL,
    conjugate,
    element,
    format_word,
    free_group,
    inverse,
    multiply,
    parse_group,
    parse_word,
    real_vector,
)

F2 = free_group(2)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
positive = st.floats(1e-3, 1e3, allow_nan=False)
letters = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=8)


def test_multiply_examples():
    assert multiply(element(REAL, 2.5), element(REAL, -1.0)) == element(REAL, 1.5)
    assert multiply(element(AFFINE, (2, 0)), element(AFFINE, (1, 1))) == element(AFFINE, (2, 2))
    assert multiply(element(F2, "ab"), element(F2, "b⁻¹a")) == element(F2, "aa")


def test_inverse_examples():
    assert inverse(element(REAL, 3)) == element(REAL, -3)
    assert inverse(element(AFFINE, (2, 4))) == element(AFFINE, (Fraction(1, 2), -2))
    assert inverse(element(F2, "ab")) == element(F2, "b⁻¹a⁻¹")


def test_conjugate_examples():
    assert conjugate(element(REAL, 5), element(REAL, 1)) == element(REAL, 1)
    assert conjugate(element(AFFINE, (2, 0)), element(AFFINE, (1, 1))) == element(AFFINE, (1, 2))
    assert conjugate(element(F2, "a"), element(F2, "b")) == element(F2, "aba⁻¹")


def test_mismatched_groups_raise():
    with pytest.raises(DomainError):
        multiply(element(REAL, 1), element(AFFINE, (1, 0)))
    with pytest.raises(DomainError):
        conjugate(element(REAL, 1), element(real_vector(1), (1,)))


def test_payload_invariants():
    with pytest.raises(DomainError):
        element(AFFINE, (0, 1))
    with pytest.raises(DomainError):
        element(AFFINE, (-1.0, 1))
    from molconv.groups import GroupElement

    with pytest.raises(DomainError):
        GroupElement(F2, (1, -1))  # not reduced
    with pytest.raises(DomainError):
        element(F2, "c")
    with pytest.raises(DomainError):
        element(real_vector(2), (1.0,))


def test_words_round_trip():
    assert parse_word("ab^-1a") == (1, -2, 1)
    assert parse_word("e") == ()
    assert format_word((1, -2, 1)) == "ab^-1a"
    assert format_word((1, -2), ascii_only=False) == "ab⁻¹"
    assert element(F2, "aa⁻¹b").payload == (2,)


def test_parse_group():
    assert parse_group("real") == REAL
    assert parse_group("vec:3") == real_vector(3)
    assert parse_group("free:2") == F2
    assert parse_group("affine") == AFFINE
    with pytest.raises(DomainError):
        parse_group("torus")


def test_exact_payloads_stay_rational():
    g = element(AFFINE, (Fraction(3, 2), Fraction(1, 3)))
    assert g.exact
    assert multiply(g, inverse(g)) == AFFINE.identity()
    assert element(REAL, 0.25).exact is False


@given(positive, finite)
def test_affine_inverse_float(a, b):
    g = element(AFFINE, (a, b))
    prod = multiply(g, inverse(g)).payload
    assert abs(prod[0] - 1) <= 1e-12 and abs(prod[1]) <= 1e-12 * max(1.0, abs(b))


@given(letters, letters)
def test_free_inverse_and_reduction(w1, w2):
    g, h = element(F2, w1), element(F2, w2)
    assert multiply(g, inverse(g)) == F2.identity()
    gh = multiply(g, h).payload
    assert all(gh[i] != -gh[i + 1] for i in range(len(gh) - 1))


@given(finite, finite, finite)
def test_real_vector_associative(a, b, c):
    V = real_vector(2)
    x, y, z = element(V, (a, b)), element(V, (b, c)), element(V, (c, a))
    lhs, rhs = multiply(multiply(x, y), z).payload, multiply(x, multiply(y, z)).payload
    assert all(abs(p - q) <= 1e-9 for p, q in zip(lhs, rhs))


def test_negative_zero_normalized():
    assert element(REAL, -0.0) == element(REAL, 0.0)
    assert hash(element(REAL, -0.0)) == hash(element(REAL, 0.0))

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from molconv.errors import DomainError
from molconv.groups import AFFINE, REAL, element, free_group
from molconv.measures import (
    MolecularMeasure,
    SampledFunction,
    bullet,
    combine,
    convolve,
    convolve_pairing,
    integrate,
    point_mass,
    reversed_pairing,
)

F2 = free_group(2)


def delta(x, group=REAL):
    return point_mass(element(group, x))


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=8)
real_measures = st.lists(st.tuples(rationals, rationals), max_size=5).map(
    lambda atoms: MolecularMeasure.from_atoms(REAL, [(element(REAL, p), c) for p, c in atoms])
)
words = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=3)
free_measures = st.lists(st.tuples(words, rationals), max_size=4).map(
    lambda atoms: MolecularMeasure.from_atoms(F2, [(element(F2, w), c) for w, c in atoms])
)


def test_point_mass():
    m = delta(0)
    assert m.atoms == ((element(REAL, 0), 1),)
    assert point_mass(element(AFFINE, (2, 3))).atoms == ((element(AFFINE, (2, 3)), 1),)
    assert m.total_variation == 1


def test_combine_examples():
    m = combine([(2, combine([(1, delta(Fraction(1, 4))), (-1, delta(0))]))])
    assert dict((p.payload, c) for p, c in m.atoms) == {Fraction(1, 4): 2, 0: -2}
    assert combine([(1, delta(0)), (-1, delta(0))]).is_empty()
    j = 3
    mj = combine([(j, delta(Fraction(1, j * j))), (-j, delta(0))])
    assert dict((p.payload, c) for p, c in mj.atoms) == {Fraction(1, 9): 3, 0: -3}


def test_combine_mixed_groups():
    with pytest.raises(DomainError):
        combine([(1, delta(0)), (1, point_mass(F2.identity()))])
    with pytest.raises(DomainError):
        convolve(delta(0), point_mass(F2.identity()))


def test_convolve_examples():
    assert convolve(delta(1), delta(2)) == delta(3)
    j = 2
    mj = combine([(j, delta(Fraction(1, j * j))), (-j, delta(0))])
    got = dict((p.payload, c) for p, c in convolve(mj, mj).atoms)
    assert got == {Fraction(1, 2): 4, Fraction(1, 4): -8, 0: 4}


def test_integrate_examples():
    x = element(REAL, 5)
    assert integrate(point_mass(x), SampledFunction((x,), (Fraction(7, 10),))) == Fraction(7, 10)
    j = 2
    mj = combine([(j, delta(Fraction(1, 4))), (-j, delta(0))])
    mm = convolve(mj, mj)
    f = SampledFunction.from_callable(mm.points, lambda p: min(1, abs(p.payload - Fraction(1, 4))))
    assert integrate(mm, f) == 2
    assert integrate(MolecularMeasure.zero(REAL), f) == 0
    with pytest.raises(DomainError):
        integrate(delta(9), f)


def test_bullet_examples():
    def clip(p):
        return max(-1, min(1, p.payload))

    y = element(REAL, Fraction(1, 3))
    x = element(REAL, Fraction(1, 2))
    assert bullet(point_mass(y), clip, x) == Fraction(5, 6)
    assert bullet(delta(1) - delta(0), clip, element(REAL, 0)) == 1
    f = SampledFunction((element(REAL, 0),), (0,))
    with pytest.raises(DomainError):
        bullet(delta(1), f, element(REAL, 0))


def test_canonical_form():
    m = MolecularMeasure.from_atoms(REAL, [(element(REAL, 1), 2), (element(REAL, 0), 1), (element(REAL, 1), -2)])
    assert m.atoms == ((element(REAL, 0), 1),)
    assert m.is_canonical()
    raw = MolecularMeasure(REAL, ((element(REAL, 1), 1), (element(REAL, 0), 1)))
    assert not raw.is_canonical()


def test_merge_tolerance_is_opt_in():
    a, b = element(REAL, 0.1 + 0.2), element(REAL, 0.3)
    assert len(MolecularMeasure.from_atoms(REAL, [(a, 1.0), (b, 1.0)])) == 2
    assert len(MolecularMeasure.from_atoms(REAL, [(a, 1.0), (b, 1.0)], merge_tol=1e-9)) == 1


def test_sampled_function_bound():
    with pytest.raises(DomainError):
        SampledFunction((element(REAL, 0),), (2,))
    f = SampledFunction((element(REAL, 0),), (2,), bound=2)
    assert f.sup_norm == 2


@given(real_measures, real_measures, real_measures, rationals)
def test_bilinear_and_associative(m, n, p, c):
    assert convolve(m + n.scaled(c), p) == convolve(m, p) + convolve(n, p).scaled(c)
    assert convolve(p, m + n) == convolve(p, m) + convolve(p, n)
    assert convolve(convolve(m, n), p) == convolve(m, convolve(n, p))


@given(free_measures, free_measures, free_measures)
def test_free_group_convolution_associative(m, n, p):
    assert convolve(convolve(m, n), p) == convolve(m, convolve(n, p))
    e = point_mass(F2.identity())
    assert convolve(e, m) == m == convolve(m, e)


@given(free_measures, free_measures)
def test_total_variation_submultiplicative(m, n):
    mn = convolve(m, n)
    assert mn.total_variation <= m.total_variation * n.total_variation
    products = [(x * y).payload for x in m.points for y in n.points]
    if len(set(products)) == len(products):
        assert mn.total_variation == m.total_variation * n.total_variation
    assert m.total_variation >= abs(m.mass)


@settings(max_examples=50)
@given(free_measures, free_measures, st.data())
def test_fubini_reversal_exact(m, n, data):
    products = {(x * y).payload: x * y for x in m.points for y in n.points}
    vals = data.draw(st.lists(rationals, min_size=len(products), max_size=len(products)))
    f = SampledFunction(tuple(products.values()), tuple(v / 4 for v in vals))
    assert integrate(convolve(m, n), f) == convolve_pairing(m, n, f) == reversed_pairing(m, n, f)

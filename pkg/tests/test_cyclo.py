import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ado.cyclo import CycNum, cyclotomic_polynomial, embed, invert, root_power, totient

CONDUCTORS = [4, 6, 8, 10, 12]


@st.composite
def cycnums(draw, m=None, nonzero=False):
    m = m or draw(st.sampled_from(CONDUCTORS))
    ints = st.integers(-6, 6)
    coeffs = [Fraction(draw(ints), draw(st.integers(1, 4))) for _ in range(totient(m))]
    a = CycNum(m, coeffs)
    if nonzero and a.is_zero():
        a = CycNum.one(m)
    return a


def triples():
    return st.sampled_from(CONDUCTORS).flatmap(lambda m: st.tuples(cycnums(m), cycnums(m), cycnums(m)))


@pytest.mark.parametrize("m, expected", [(1, [-1, 1]), (4, [1, 0, 1]), (6, [1, -1, 1]), (12, [1, 0, -1, 0, 1])])
def test_cyclotomic_polynomial(m, expected):
    assert cyclotomic_polynomial(m) == expected


def test_root_power_examples():
    assert root_power(4, 2) == CycNum.from_int(4, -1)
    assert root_power(6, 3) == CycNum.from_int(6, -1)
    assert root_power(6, 2).coeffs == [Fraction(-1), Fraction(1)]


def test_invert_examples():
    assert invert(CycNum.from_int(4, -1)) == CycNum.from_int(4, -1)
    assert invert(root_power(4, 1)) == -root_power(4, 1)
    a = CycNum.one(6) + root_power(6, 1)
    assert a * invert(a) == CycNum.one(6)
    with pytest.raises(ZeroDivisionError):
        invert(CycNum.zero(6))


def test_embed_examples():
    assert embed(root_power(6, 1), 12) == root_power(12, 2)
    assert embed(CycNum.from_int(2, -1), 4) == CycNum.from_int(4, -1)
    assert embed(CycNum.one(3) + root_power(3, 1), 6) == CycNum.one(6) + root_power(6, 2)
    with pytest.raises(ValueError):
        embed(root_power(6, 1), 8)


def test_wrong_coefficient_count():
    with pytest.raises(ValueError):
        CycNum(6, [1, 2, 3])


@given(triples())
def test_ring_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == CycNum.zero(a.conductor)


@given(cycnums(nonzero=True))
def test_inverse(a):
    assert a * invert(a) == CycNum.one(a.conductor)
    assert a / a == CycNum.one(a.conductor)


@given(st.sampled_from(CONDUCTORS).flatmap(lambda m: st.tuples(cycnums(m), cycnums(m))))
def test_embed_is_a_homomorphism(t):
    a, b = t
    m2 = 2 * a.conductor
    assert embed(a * b, m2) == embed(a, m2) * embed(b, m2)
    assert embed(a + b, m2) == embed(a, m2) + embed(b, m2)


@given(st.sampled_from(CONDUCTORS), st.integers(-50, 50), st.integers(-50, 50))
def test_root_power_additive(m, e1, e2):
    assert root_power(m, e1) * root_power(m, e2) == root_power(m, e1 + e2)


@given(st.sampled_from(CONDUCTORS).flatmap(lambda m: st.lists(cycnums(m, nonzero=True), min_size=1, max_size=20)))
def test_float_sanity(factors):
    exact = factors[0]
    approx = complex(factors[0])
    for f in factors[1:]:
        exact = exact * f
        approx *= complex(f)
    got = complex(exact)
    assert abs(got - approx) <= 1e-9 * max(1.0, abs(approx))


def test_complex_value_of_root():
    assert abs(complex(root_power(10, 3)) - cmath.exp(2j * cmath.pi * 3 / 10)) < 1e-12


@given(cycnums())
def test_json_round_trip(a):
    assert CycNum.from_json(a.to_json()) == a

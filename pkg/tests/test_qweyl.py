import pytest
from hypothesis import given
from hypothesis import strategies as st

from ado.cyclo import root_power
from ado.jones import colored_jones
from ado.poly import CYCLOTOMIC, LaurentPoly, QFrac, X, pochhammer
from ado.qweyl import (SequenceFunction, WeylElement, WindowUnderflow, act_discrete, act_on_laurent,
                       act_on_sequence, homogenize, q, reparameterize)
from ado.recursion import builtin_operators

x, y = WeylElement.monomial((1,), (0,)), WeylElement.monomial((0,), (1,))
ONE = WeylElement.constant(1)


def cyc(d, m):
    return LaurentPoly.from_exps(("x",), d, CYCLOTOMIC, m)


@st.composite
def operators(draw):
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        key = ((draw(st.integers(-2, 2)),), (draw(st.integers(-2, 2)),))
        terms[key] = q(draw(st.integers(-3, 3)), draw(st.sampled_from([-2, -1, 1, 3])))
    return WeylElement(1, 0, terms)


@st.composite
def cyclo_inputs(draw):
    r = draw(st.integers(2, 6))
    m = 2 * r
    exps = draw(st.lists(st.integers(-5, 5), min_size=1, max_size=4, unique=True))
    p = cyc({e: root_power(m, draw(st.integers(0, m - 1))) * draw(st.integers(1, 3)) for e in exps}, m)
    return r, p


def test_commutation_examples():
    assert y * x == q(1) * x * y
    assert y**2 * x == q(2) * x * y**2
    assert (y**-1) * y == ONE


def test_square_of_trefoil_operator_acts_as_composition():
    a = q(3) * x**6 * y - 1
    p = -X(3, regime=CYCLOTOMIC, conductor=8)
    assert act_on_laurent(a * a, p, 4) == act_on_laurent(a, act_on_laurent(a, p, 4), 4)


def test_act_on_laurent_examples():
    m = 4
    i = root_power(m, 1)
    assert act_on_laurent(y, cyc({3: 1}, m), 2) == cyc({3: -i}, m)
    p = -X(3, regime=CYCLOTOMIC, conductor=m)
    assert act_on_laurent(q(3) * x**6 * y, p, 2) == cyc({9: 1, 3: 1}, m)
    assert act_on_laurent(ONE, p, 2) == p


@given(operators(), operators(), cyclo_inputs())
def test_action_compatibility(a, b, inp):
    r, p = inp
    assert act_on_laurent(a * b, p, r) == act_on_laurent(a, act_on_laurent(b, p, r), r)


@given(cyclo_inputs())
def test_q_commutation_realized(inp):
    r, p = inp
    lhs = act_on_laurent(y * x, p, r)
    rhs = act_on_laurent(x * y, p, r).map_coeffs(lambda c: c * root_power(2 * r, 1))
    assert lhs == rhs


def test_act_on_sequence_examples():
    const = SequenceFunction({n: 1 for n in range(0, 6)})
    for N in range(1, 5):
        assert act_on_sequence(y - 1, const, N).is_zero()
    jones = SequenceFunction({n: colored_jones("4_1", n) for n in range(0, 6)})
    assert act_on_sequence(x, jones, 3) == QFrac.mono(3) * jones[3]
    ops = builtin_operators("4_1")
    lhs = (q(1) - q(-1)) * WeylElement.constant(1)
    lhs = act_on_sequence(lhs * ops.A, jones, 2)
    b_at = sum((c.shift(2 * e[0] // 2) for e, c in ops.B.terms.items()), QFrac.zero())
    assert lhs == b_at
    with pytest.raises(WindowUnderflow):
        act_on_sequence(y**-1, jones, 0)


def test_act_discrete_examples():
    n_vars = ("x",)
    window = range(0, 8)
    # constant table, hat-y - 1
    yh = WeylElement(0, 1, {((0,), (1,)): 1})
    const = {(a,): LaurentPoly.constant((), 1) for a in window}
    assert all(v.is_zero() for v in act_discrete(yh - 1, const).values())
    # linear exponential q^a, hat-y - q
    lin = {(a,): LaurentPoly.constant((), QFrac.mono(a)) for a in window}
    assert all(v.is_zero() for v in act_discrete(yh - q(1), lin).values())
    # (x;q)_a, (1-x)y + hat-x x - 1 with y: x -> qx and hat-x = q^a
    poch = {(a,): pochhammer(LaurentPoly.monomial(n_vars, (1,)), QFrac.mono(1), a) for a in window}
    op = WeylElement(1, 1, {((0, 0), (1, 0)): 1, ((1, 0), (1, 0)): -1, ((1, 1), (0, 0)): 1, ((0, 0), (0, 0)): -1})
    out = act_discrete(op, poch)
    assert len(out) == len(window)
    assert all(v.is_zero() for v in out.values())


def test_homogenize_examples():
    b = LaurentPoly.from_exps(("x",), {1: 1})
    assert homogenize(ONE, b) == x * y - q(1) * x
    ops = builtin_operators("4_1")
    h = homogenize(ops.A, ops.B)
    jones = SequenceFunction({n: colored_jones("4_1", n) for n in range(0, 13)})
    for N in range(2, 11):
        assert act_on_sequence(h, jones, N).is_zero()


def test_homogenize_on_ado_family():
    from ado.recursion import ado_hat

    ops = builtin_operators("3_1")
    h = homogenize(ops.A, ops.B)
    for r in range(2, 7):
        assert act_on_laurent(h, ado_hat("3_1", r).hat, r).is_zero()


def test_reparameterize_examples():
    assert reparameterize(x * y, q(-1), -1) == -q(-1) * x * y
    a = q(3) * x**6 * y - x * y**2 + 5
    assert reparameterize(reparameterize(a, q(-1), -1), q(1), -1) == a
    with pytest.raises(ValueError):
        reparameterize(a, 1, 2)


@given(operators())
def test_json_round_trip(a):
    assert WeylElement.from_json(a.to_json()) == a

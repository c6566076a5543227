import random
from fractions import Fraction

import pytest

from ado.cyclo import CycNum
from ado.poly import CYCLOTOMIC, LaurentPoly, QFrac
from ado.qweyl import WeylElement, act_on_laurent, homogenize, q
from ado.recursion import (Ansatz, ado_hat, builtin_operators, figure_eight_aj_factor, figure_eight_apoly,
                           guess_operator, kashaev_check, normalize_operator, normalize_vector, nullspace,
                           proportional, q1_divisibility, residue_check, synthetic_trivial_family,
                           thm_jones_crosscheck, verify_ado, verify_jones)
from ado.schemas import validate

x, y = WeylElement.monomial((1,), (0,)), WeylElement.monomial((0,), (1,))


def matvec_zero(rows, v):
    return all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in rows)


# -------------------------------------------------------------- nullspace

@pytest.mark.parametrize("method", ["bareiss", "modular"])
def test_nullspace_examples(method):
    assert nullspace([[1, 0], [0, 1]], method=method) == []
    (v,) = nullspace([[1, 2]], method=method)
    assert normalize_vector(v) in ([-2, 1], [2, -1])
    assert nullspace([], method=method) == []


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_nullspace_of_low_rank_product(seed):
    rng = random.Random(seed)
    a = [[rng.randint(-9, 9) for _ in range(30)] for _ in range(40)]
    b = [[rng.randint(-9, 9) for _ in range(60)] for _ in range(30)]
    m = [[sum(a[i][k] * b[k][j] for k in range(30)) for j in range(60)] for i in range(40)]
    exact = nullspace(m, method="bareiss")
    modular = nullspace(m, method="modular", seed=seed)
    assert len(exact) == len(modular) == 30
    for v in exact + modular:
        assert matvec_zero(m, v)


def test_nullspace_accepts_rationals():
    (v,) = nullspace([[Fraction(1, 2), Fraction(1, 3)]])
    assert matvec_zero([[Fraction(1, 2), Fraction(1, 3)]], v)


def test_normalize_vector():
    assert normalize_vector([Fraction(1, 2), Fraction(-1, 3)]) == [-3, 2]
    assert normalize_vector([0, 0]) == [0, 0]


# -------------------------------------------------------------- operators

@pytest.mark.parametrize("knot, span", [("3_1", (0, 1)), ("4_1", (-1, 1)), ("5_2", (0, 3))])
def test_operator_shapes(knot, span):
    ops = builtin_operators(knot)
    assert ops.A.y_span() == span
    assert not ops.B.is_zero()
    validate(ops.A.to_json(), "operator")


@pytest.mark.parametrize("knot", ["3_1", "4_1", "5_2"])
def test_verify_jones(knot):
    cert = verify_jones(knot, range(2, 9))
    assert cert.passed
    validate(cert.to_json(), "certificate")


@pytest.mark.parametrize("knot", ["3_1", "4_1", "5_2"])
def test_literal_operators_fail_jones(knot):
    assert not verify_jones(knot, range(2, 6), literal=True).passed


def test_verify_ado_small_range():
    for knot in ("3_1", "4_1", "5_2"):
        cert = verify_ado(knot, range(2, 7))
        assert cert.passed and cert.sigma == 1, knot


def test_verify_ado_detects_a_corrupted_operator():
    ops = builtin_operators("3_1")
    bad = ops.A + q(1) * x
    h = homogenize(bad, ops.B)
    assert not all(act_on_laurent(h, ado_hat("3_1", r).hat, r).is_zero() for r in range(2, 6))


def test_residue_and_kashaev_small():
    for knot in ("3_1", "4_1", "5_2"):
        for r in (2, 3, 4):
            for N in range(1, 2 * r + 1):
                if N % r:
                    assert residue_check(knot, r, N).passed
            assert kashaev_check(knot, r).passed
    with pytest.raises(ValueError):
        residue_check("3_1", 3, 6)


def test_kashaev_records_literal_comparison():
    cert = kashaev_check("4_1", 5)
    assert cert.details["literal_equality"] is False


def test_aj_limit():
    ops = builtin_operators("4_1")
    cert = q1_divisibility(ops.homogeneous(), figure_eight_apoly(), figure_eight_aj_factor())
    assert cert.passed
    assert cert.details["unit"] == {"coeff": "1", "m": 0, "l": 0}


def test_aj_limit_of_the_apolynomial_itself():
    ap = figure_eight_apoly()
    op = WeylElement(1, 0, {((i,), (j,)): c for (i, j), c in ap.items()})
    cert = q1_divisibility(op, ap, {(0, 0): 1})
    assert cert.passed


def test_aj_limit_rejects_a_non_multiple():
    op = x * y - 1
    assert not q1_divisibility(op, figure_eight_apoly()).passed


# -------------------------------------------------------------- guessing

def constant_family(rs):
    return {r: LaurentPoly.constant(("x",), 1, CYCLOTOMIC, 2 * r) for r in rs}


def test_guess_constant_family():
    res = guess_operator(constant_family(range(2, 8)), Ansatz(1, 0, 0), range(2, 6), range(6, 8))
    assert res.certificate.passed
    assert len(res.candidates) == 1 and proportional(res.candidates[0], y - 1)


def test_trefoil_has_no_first_order_annihilator():
    # A alone is inhomogeneous (A hat = kappa B with B nonzero), so order 1 finds nothing
    family = {r: ado_hat("3_1", r).hat for r in range(2, 11)}
    res = guess_operator(family, Ansatz(1, 6, 3), range(2, 8), range(8, 11), method="bareiss")
    assert res.kernel_dimension == 0
    ops = builtin_operators("3_1")
    assert not act_on_laurent(ops.A, family[5], 5).is_zero()


def test_guess_order_zero_gives_empty_kernel():
    family = {r: ado_hat("3_1", r).hat for r in range(2, 8)}
    res = guess_operator(family, Ansatz(0, 4, 4), range(2, 6), range(6, 8))
    assert res.kernel_dimension == 0 and not res.certificate.passed


def test_guess_synthetic_family_has_no_small_annihilator():
    family = synthetic_trivial_family(range(2, 10), seed=7)
    res = guess_operator(family, Ansatz(1, 2, 2), range(2, 7), range(7, 10))
    assert res.kernel_dimension == 0 and not res.candidates


def test_guess_input_errors():
    fam = constant_family(range(2, 6))
    with pytest.raises(ValueError):
        guess_operator(fam, Ansatz(1, 0, 0), range(2, 5), range(4, 6))
    with pytest.raises(ValueError):
        guess_operator(fam, Ansatz(-1, 0, 0), range(2, 4), range(4, 6))
    zero = {r: LaurentPoly.zero(("x",), CYCLOTOMIC, 2 * r) for r in range(2, 6)}
    with pytest.raises(ValueError):
        guess_operator(zero, Ansatz(1, 0, 0), range(2, 4), range(4, 6))


def test_jones_crosscheck_accepts_the_true_operator_and_rejects_a_corrupted_one():
    ops = builtin_operators("3_1")
    h = homogenize(ops.A, ops.B)
    assert thm_jones_crosscheck(h, "3_1", range(2, 10)).passed
    corrupted = h + q(2) * x**3
    assert not thm_jones_crosscheck(corrupted, "3_1", range(2, 10)).passed


def test_certificate_json():
    cert = verify_ado("3_1", range(2, 4))
    d = cert.to_json()
    validate(d, "certificate")
    assert d["status"] == "pass" and d["sigma"] == 1


def test_qfrac_coefficients_in_operators_are_exact():
    ops = builtin_operators("5_2")
    assert all(isinstance(c, QFrac) for c in ops.A.terms.values())
    assert isinstance(CycNum.one(4), CycNum)

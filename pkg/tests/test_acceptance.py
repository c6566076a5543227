"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run alone with: pytest tests/test_acceptance.py -v
"""

import json
import os
import subprocess
import sys
import time

import pytest

from ado.battery import run_battery
from ado.cli import main as cli_main
from ado.jones import colored_jones
from ado.poly import LaurentPoly, QPoly
from ado.qweyl import act_on_laurent, homogenize
from ado.recursion import (Ansatz, ado_hat, builtin_operators, figure_eight_aj_factor, figure_eight_apoly,
                           guess_operator, kashaev_check, proportional, q1_divisibility, residue_check,
                           thm_jones_crosscheck, verify_ado, verify_jones)
from ado.statesum import ado_invariant, murakami_41
from ado.tangle import builtin
from reference_data import (FIGURE_EIGHT_CORRECTED, FIGURE_EIGHT_PRINTED, JONES_4_1_J4, TABLE_3_1, TABLE_5_2,
                            TABLE_5_2_CORRECTED, TABLE_5_2_EDITS, factors_to_hat, jones_printed, qpoly,
                            row_to_hat)

HERE = os.path.dirname(os.path.abspath(__file__))


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n:2d}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail

    return emit


def cli_hats(knot, rs, tmp_path):
    out = tmp_path / f"{knot}.json"
    code = cli_main(["compute", "--knot", knot, "--r", rs, "--output", str(out)])
    assert code == 0
    return {e["r"]: LaurentPoly.from_json(e["hat"]) for e in json.loads(out.read_text())["ado"]}


def test_criterion_01_trefoil_table(report, tmp_path):
    t = time.perf_counter()
    hats = cli_hats("3_1", "2..11", tmp_path)
    dt = time.perf_counter() - t
    matched = [r for r, row in TABLE_3_1.items() if hats[r] == row_to_hat(row, r)]
    ok = len(matched) == 10 and dt < 30
    report(1, ok, f"3_1 rows r=2..11 matched {len(matched)}/10 in {dt:.1f}s (limit 30s)")


def test_criterion_02_five_two_table(report, tmp_path):
    t = time.perf_counter()
    hats = cli_hats("5_2", "2..11", tmp_path)
    dt = time.perf_counter() - t
    literal = [r for r, row in TABLE_5_2.items() if hats[r] == row_to_hat(row, r)]
    corrected = [r for r, row in TABLE_5_2_CORRECTED.items() if hats[r] == row_to_hat(row, r)]
    # each edited row must be forced by the recursion operator: the printed
    # row fails it and the edited row satisfies it
    h = builtin_operators("5_2").homogeneous()
    forced = all(
        not act_on_laurent(h, row_to_hat(TABLE_5_2[r], r), r).is_zero()
        and act_on_laurent(h, row_to_hat(TABLE_5_2_CORRECTED[r], r), r).is_zero()
        for r in TABLE_5_2_EDITS
    )
    ok = len(corrected) == 10 and forced and dt < 120
    report(2, ok, f"5_2 rows r=2..11: {len(corrected)}/10 against the edited transcription "
                  f"(literal {len(literal)}/10; rows {sorted(TABLE_5_2_EDITS)} carry printed slips rejected by "
                  f"the recursion operator) in {dt:.1f}s (limit 120s)")


def test_criterion_03_figure_eight_table(report):
    literal, corrected = [], []
    for r in range(2, 6):
        h = ado_invariant(builtin("4_1"), r).hat
        if h == factors_to_hat(FIGURE_EIGHT_PRINTED[r], r):
            literal.append(r)
        if h == factors_to_hat(FIGURE_EIGHT_CORRECTED[r], r):
            corrected.append(r)
    oracle = [r for r in range(2, 13) if ado_invariant(builtin("4_1"), r).hat == murakami_41(r).hat]
    ok = len(corrected) == 4 and len(oracle) == 11
    report(3, ok, f"4_1 rows r=2..5: {len(corrected)}/4 against the corrected transcription "
                  f"(literal {len(literal)}/4: r={literal}); state sum = single-sum formula for "
                  f"{len(oracle)}/11 r in 2..12")


def test_criterion_04_colored_jones(report):
    literal = [N for N in range(1, 5) if colored_jones("4_1", N) == jones_printed(N)]
    j4 = colored_jones("4_1", 4) == qpoly(JONES_4_1_J4)
    unknot = colored_jones("unknot", 0).is_zero() and all(
        colored_jones("unknot", N) * QPoly.from_dict({1: 1, -1: -1}) == QPoly.from_dict({N: 1, -N: -1})
        for N in range(1, 21)
    )
    ok = literal == [1, 2, 3] and j4 and unknot
    report(4, ok, f"J_1..J_3 of 4_1 exact; J_4 equals the printed value with its q^27 -> q^-27 sign restored "
                  f"(literal matches N={literal}); unknot normalization for N<=20: {unknot}")


def test_criterion_05_jones_recursions(report):
    certs = {k: verify_jones(k, range(2, 16)) for k in ("4_1", "3_1", "5_2")}
    literal = {k: verify_jones(k, range(2, 16), literal=True).passed for k in certs}
    ok = all(c.passed for c in certs.values())
    report(5, ok, "inhomogeneous and homogeneous recursions exact for N=2..15: "
                  + ", ".join(f"{k} {c.status}" for k, c in certs.items())
                  + f" (printed operators as transcribed: {literal})")


def test_criterion_06_ado_recursions(report):
    t = time.perf_counter()
    certs = {"4_1": verify_ado("4_1", range(2, 21)), "3_1": verify_ado("3_1", range(2, 12)),
             "5_2": verify_ado("5_2", range(2, 12))}
    dt = time.perf_counter() - t
    sigmas = {c.sigma for c in certs.values()}
    scale = all(c.details.get("global_scale") for c in certs.values())
    ok = all(c.passed for c in certs.values()) and len(sigmas) == 1 and scale and dt < 300
    report(6, ok, f"4_1 r=2..20, 3_1 and 5_2 r=2..11: "
                  + ", ".join(f"{k} {c.status} prefactor {c.prefactor}" for k, c in certs.items())
                  + f"; y-sign {sigmas}; one global scale: {scale}; {dt:.1f}s (limit 300s)")


def test_criterion_07_residue(report):
    total, failed = 0, []
    for knot in ("3_1", "4_1", "5_2"):
        for r in range(2, 9):
            for N in range(1, 2 * r + 1):
                if N % r:
                    total += 1
                    if not residue_check(knot, r, N).passed:
                        failed.append((knot, r, N))
    report(7, not failed, f"{total - len(failed)}/{total} (knot, r, N) cases with r=2..8, N=1..2r, r not dividing N")


def test_criterion_08_kashaev(report):
    certs = [kashaev_check(k, r) for k in ("3_1", "4_1", "5_2") for r in range(2, 11)]
    good = sum(c.passed for c in certs)
    report(8, good == len(certs), f"{good}/{len(certs)} (knot, r) cases, r=2..10, compared relative to the unknot "
                                  "value i^(r-1)/r")


def test_criterion_09_aj_limit(report):
    cert = q1_divisibility(builtin_operators("4_1").homogeneous(), figure_eight_apoly(), figure_eight_aj_factor())
    report(9, cert.passed, f"q=1 image divisible by the A-polynomial; quotient {cert.details.get('quotient')}; "
                           f"unit {cert.details.get('unit')}")


def test_criterion_10_guesser(report):
    t = time.perf_counter()
    family = {r: ado_hat("3_1", r).hat for r in range(2, 13)}
    res = guess_operator(family, Ansatz(2, 11, 20), range(2, 10), range(10, 13), method="modular", seed=20240229)
    ops = builtin_operators("3_1")
    target = homogenize(ops.A, ops.B)
    match = len(res.candidates) == 1 and proportional(res.candidates[0], target)
    cross = thm_jones_crosscheck(res.candidates[0], "3_1", range(2, 16)).passed if res.candidates else False
    dt = time.perf_counter() - t
    ok = res.certificate.passed and match and cross and dt < 300
    report(10, ok, f"kernel dim {res.kernel_dimension}, {len(res.candidates)} minimal candidate(s), proportional to "
                   f"homogenize(A,B): {match}; annihilates J^3_1 on N=2..15: {cross}; {dt:.1f}s (limit 300s)")


def test_criterion_11_annihilator_battery(report):
    results = run_battery()
    bad = [name for name, res in results.items() if not all(res.values())]
    n_ops = sum(len(res) for res in results.values())
    report(11, not bad, f"{len(results) - len(bad)}/{len(results)} families, {n_ops} generators, windows of width >= 8"
                        + (f"; failing: {bad}" if bad else ""))


PROPERTY_SUITES = [
    "test_cyclo.py::test_ring_axioms",
    "test_cyclo.py::test_inverse",
    "test_cyclo.py::test_embed_is_a_homomorphism",
    "test_cyclo.py::test_root_power_additive",
    "test_poly.py::test_pochhammer_multiplicativity",
    "test_poly.py::test_ring_axioms_rational",
    "test_qweyl.py::test_action_compatibility",
    "test_qweyl.py::test_q_commutation_realized",
    "test_recursion.py::test_nullspace_of_low_rank_product",
    "test_tangle.py::test_arc_count_formula_on_random_programs",
]


def test_criterion_12_property_suites(report):
    env = dict(os.environ, HYPOTHESIS_PROFILE="default")
    cmd = [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider"] + [os.path.join(HERE, s) for s in
                                                                                 PROPERTY_SUITES]
    done = subprocess.run(cmd, capture_output=True, text=True, env=env, cwd=HERE)
    last = done.stdout.strip().splitlines()[-1] if done.stdout.strip() else done.stderr[-200:]
    report(12, done.returncode == 0, f"{len(PROPERTY_SUITES)} property suites under the fixed default seed: {last}")

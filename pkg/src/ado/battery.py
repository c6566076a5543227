"""Example q-holonomic functions and annihilators, checked on finite windows.

Each entry pairs a function of discrete variables a (and possibly x) with
operators from its annihilator ideal; check() applies every operator and
reports whether all resulting tables vanish. Functions that are not
Laurent polynomials in x (reciprocal q-factorials) are checked with sympy
rational functions instead of act_discrete.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import sympy

from .poly import RATIONAL, LaurentPoly, QFrac, pochhammer
from .qweyl import WeylElement, WindowUnderflow, act_discrete, q

WINDOW = range(-3, 9)  # width 12


@dataclass
class Example:
    name: str
    hatted: int
    operators: list[WeylElement]
    table: Callable[[tuple], object]
    window: range = WINDOW
    rational: bool = False
    note: str = ""


def _x(k: int = 1) -> LaurentPoly:
    return LaurentPoly.from_exps(("x",), {k: 1}, RATIONAL)


def _const(c) -> LaurentPoly:
    return LaurentPoly.constant(("x",), c, RATIONAL)


def _gens(m: int):
    (x,), (y,), xh, yh = WeylElement.generators(1, m)
    return x, y, xh, yh


def _qfact(base: LaurentPoly, step: int, n: int) -> LaurentPoly:
    return pochhammer(base, QFrac.mono(step), n)


def examples() -> list[Example]:
    out = []

    x, y, (xh,), (yh,) = _gens(1)
    one = WeylElement.constant(1, 1, 1)
    out.append(Example("constant", 1, [y - 1, yh - 1], lambda a: _const(1)))
    out.append(Example("discrete delta", 1, [y - 1, xh - 1],
                       lambda a: _const(1 if a[0] == 0 else 0)))
    out.append(Example("linear exponential q^a", 1, [yh - q(1), y - 1],
                       lambda a: _const(QFrac.mono(a[0]))))
    out.append(Example("linear exponential x", 1, [y - q(1), yh - 1], lambda a: _x()))
    # q^(3a) x^(1/2): hat-y - q^3, y^2 - q
    out.append(Example("linear exponential q^(3a) x^(1/2)", 1, [yh - q(3), y**2 - q(1)],
                       lambda a: LaurentPoly(("x",), {(1,): QFrac.mono(3 * a[0])}, RATIONAL)))
    out.append(Example("quadratic exponential q^(a^2)", 1, [yh - q(1) * xh**2, y - 1],
                       lambda a: _const(QFrac.mono(a[0] ** 2))))
    out.append(Example("mixed quadratic x^a", 1, [y - xh, yh - x], lambda a: _x(a[0])))
    out.append(Example("(x;q)_a", 1, [(xh - q(-1)) * (yh + xh * x - 1), (one - x) * y + xh * x - 1],
                       lambda a: _qfact(_x(), 1, a[0])))
    out.append(Example("(x;q^2)_a", 1, [(xh - q(-1)) * (yh + xh**2 * x - 1), (one - x) * y**2 + xh**2 * x - 1],
                       lambda a: _qfact(_x(), 2, a[0]),
                       note="ordinary shift is y^2 (x -> q^2 x)"))

    x, y, (xh1, xh2), (yh1, yh2) = _gens(2)
    one = WeylElement.constant(1, 1, 2)

    def qpow_fact(a):
        base = _const(QFrac.mono(a[1]))
        return _qfact(base, 2, a[0])

    out.append(Example("(q^a2;q^2)_a1", 2,
                       [(xh1 - q(-1)) * (yh1 + xh1**2 * xh2 - 1), (one - xh2) * yh2**2 + xh1**2 * xh2 - 1, y - 1],
                       qpow_fact, window=range(-2, 8), note="second generator shifts a2 by 2"))
    out.append(Example("half-infinite indicator a1 <= a2", 2,
                       [(xh2 - q(-1) * xh1) * (yh2 - 1), (xh2 - xh1) * (yh1 - 1), y - 1],
                       lambda a: _const(1 if a[0] <= a[1] else 0)))

    x, y, (xh1, xh2, xh3), (yh1, yh2, yh3) = _gens(3)
    out.append(Example("indicator a2 <= a1 <= a3", 3,
                       [(xh1 - q(1) * xh3) * (yh3 - 1), (xh1 - xh2) * (yh2 - 1),
                        (xh1 - xh3) * (xh1 - q(-1) * xh2) * (yh1 - 1), y - 1],
                       lambda a: _const(1 if a[1] <= a[0] <= a[2] else 0), window=range(-3, 6)))

    # reciprocal q-factorials, nonnegative a only
    X, Q = sympy.symbols("x q")
    x, y, (xh,), (yh,) = _gens(1)
    one = WeylElement.constant(1, 1, 1)

    def inv_xq2(a):
        return sympy.Integer(1) / sympy.prod([1 - Q ** (2 * l) * X for l in range(a[0])])

    def inv_q2q2(a):
        return sympy.Integer(1) / sympy.prod([1 - Q ** (2 * l + 2) for l in range(a[0])])

    out.append(Example("1/(x;q^2)_a", 1, [(xh - q(-1)) * ((one - xh**2 * x) * yh - 1),
                                         (one - xh**2 * x) * y**2 + x - 1],
                       inv_xq2, window=range(0, 10), rational=True,
                       note="ordinary shift is y^2 (x -> q^2 x)"))
    out.append(Example("1/(q^2;q^2)_a", 1, [(xh - q(-1)) * ((one - q(2) * xh**2) * yh - 1), y - 1],
                       inv_q2q2, window=range(0, 10), rational=True))
    return out


def _qfrac_sym(c: QFrac, Q):
    num = sum(v * Q**e for e, v in c.num.to_dict().items())
    den = sum(v * Q**e for e, v in c.den.to_dict().items())
    return num / den


def act_rational(a: WeylElement, table: dict, points) -> dict:
    """Same action as act_discrete on sympy rational functions of x and q."""
    X, Q = sympy.symbols("x q")
    n = a.n
    out = {}
    for pt in points:
        acc = 0
        for (xe, ye), c in a.terms.items():
            src = tuple(u + v for u, v in zip(pt, ye[n:]))
            if src not in table:
                raise WindowUnderflow(src)
            f = table[src]
            if ye[0]:
                f = f.subs(X, Q ** ye[0] * X)
            qe = sum(u * v for u, v in zip(xe[n:], pt))
            acc += _qfrac_sym(c, Q) * Q**qe * X ** xe[0] * f
        out[pt] = sympy.cancel(sympy.together(acc))
    return out


def check(ex: Example) -> dict:
    """{operator string: True iff the result table vanishes}."""
    keys = list(itertools.product(ex.window, repeat=ex.hatted))
    table = {k: ex.table(k) for k in keys}
    results = {}
    for op in ex.operators:
        shifts = {ye[op.n:] for _, ye in op.terms}
        points = [k for k in keys if all(tuple(u + v for u, v in zip(k, s)) in table for s in shifts)]
        if ex.rational:
            res = act_rational(op, table, points)
            ok = all(v == 0 for v in res.values())
        else:
            res = act_discrete(op, table, points)
            ok = all(v.is_zero() for v in res.values())
        results[op.to_str()] = ok and len(points) > 0
    return results


def run_battery() -> dict[str, dict]:
    return {ex.name: check(ex) for ex in examples()}

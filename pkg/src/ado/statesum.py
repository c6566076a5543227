"""State sums for ADO invariants at q = zeta_2r.

A validated tangle program is contracted bottom to top. The state at a
slice assigns a weight label in 0..r-1 to every strand; amplitudes are
Laurent polynomials in the component variables x_1..x_n with
coefficients in Q(zeta_2r). Linking-type unit factors (z_ij and the
alpha^2 framing term) are never multiplied in; they are reported in a
prefactor record.

Two engines compute the same bracket:

* ``reference``: exact sparse propagation over CycNum, any number of
  components;
* ``modular``: multi-modular evaluation and interpolation (knots only),
  much faster; see ``_modular``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import _modular
from .cyclo import CycNum, root_power, totient
from .poly import CYCLOTOMIC, InexactDivision, LaurentPoly, exact_div, scale_substitute
from .tangle import TangleProgram, linking_data, validate

FULLY_CANCELLED = "fully-cancelled"
RESIDUAL = "residual"


def _vars(n: int) -> tuple[str, ...]:
    return ("x",) if n == 1 else tuple(f"x{i + 1}" for i in range(n))


# ---------------------------------------------------------------- weights

@lru_cache(maxsize=None)
def _gauss_binomial(r: int, n: int, k: int) -> CycNum:
    """[n choose k] in Q = q^2 at q = zeta_2r."""
    m = 2 * r
    if k < 0 or k > n:
        return CycNum.zero(m)
    # Pascal: [n,k] = [n-1,k-1] + Q^k [n-1,k]
    row = [CycNum.one(m)]
    for nn in range(1, n + 1):
        new = []
        for kk in range(nn + 1):
            v = row[kk - 1] if kk >= 1 else CycNum.zero(m)
            if kk <= nn - 1:
                v = v + root_power(m, 2 * kk) * row[kk]
            new.append(v)
        row = new
    return row[k]


@lru_cache(maxsize=None)
def _pochhammer_x(r: int, a: int, k: int) -> dict[int, CycNum]:
    """prod_{l<k} (1 - q^(2(a-1)-2l) x^-2) as {x-exponent: coeff}."""
    m = 2 * r
    out = {0: CycNum.one(m)}
    for l in range(k):
        c = -root_power(m, 2 * (a - 1) - 2 * l)
        new = dict(out)
        for e, v in out.items():
            t = v * c
            new[e - 2] = new[e - 2] + t if e - 2 in new else t
        out = {e: v for e, v in new.items() if not v.is_zero()}
    return out


class LabelError(ValueError):
    pass


def crossing_weight(
    r: int, sign: int, ins: tuple[int, int], outs: tuple[int, int],
    components: tuple[int, int] = (0, 0), n_components: int = 1,
) -> LaurentPoly:
    """Matrix coefficient of a crossing between labelled strands.

    ``ins`` and ``outs`` are (left, right) labels below and above the
    crossing; ``components`` gives the components of the left and right
    incoming strands. A positive crossing takes (a, b) to (b+k, a-k); a
    negative one takes (B, A) to (A-k, B+k). Anything else is zero.
    """
    for v in (*ins, *outs):
        if not 0 <= v < r:
            raise LabelError(f"label {v} outside 0..{r - 1}")
    m = 2 * r
    vars_ = _vars(n_components)
    zero = LaurentPoly.zero(vars_, CYCLOTOMIC, m)
    left, right = ins
    cl, cr = components
    if sign > 0:
        a, b = left, right
        k = a - outs[1]
        if k < 0 or outs[0] != b + k:
            return zero
        c, d = a - k, b + k
        coef = root_power(m, (c - a) * (a + b + 1) + 2 * c * d + k * (k + 1)) * _gauss_binomial(r, b + k, k)
        own, other = cl, cr  # own carries a; P_k and (-x)^k live there
        own_e, other_e = k - d, -c
    else:
        A, B = right, left
        k = A - outs[0]
        if k < 0 or outs[1] != B + k:
            return zero
        c = A - k
        coef = root_power(m, (c - A) * (A + B - 1) - 2 * A * B) * _gauss_binomial(r, B + k, k)
        if k % 2:
            coef = -coef
        own, other = cr, cl
        own_e, other_e = k + B, A
        a = A
    terms = {}
    for e, v in _pochhammer_x(r, a, k).items():
        exps = [0] * n_components
        exps[own] += own_e + e
        exps[other] += other_e
        terms[tuple(2 * x for x in exps)] = coef * v
    return LaurentPoly(vars_, terms, CYCLOTOMIC, m)


def _cup_cap_weight(kind: str, r: int, t: int) -> tuple[int, int]:
    """(zeta exponent, x exponent) of a cup or cap with label t."""
    if kind == "cup-coev*":
        return 2 * t * (1 - r), r - 1
    if kind == "cap-ev*":
        return 2 * t * (r - 1), 1 - r
    return 0, 0


# ---------------------------------------------------------------- contraction

def _reference_bracket(p: TangleProgram, r: int) -> LaurentPoly:
    m = 2 * r
    n = p.n_components
    vars_ = _vars(n)
    one = CycNum.one(m)
    zero_e = (0,) * n
    state: dict[tuple, dict[tuple, CycNum]] = {(0,): {zero_e: one}}

    def add_into(acc: dict, amp: dict, w: dict):
        for e1, c1 in amp.items():
            for e2, c2 in w.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = c1 * c2
                acc[e] = acc[e] + v if e in acc else v

    for li, layer in enumerate(p.layers):
        kind, i = layer.kind, layer.pos - 1
        if kind == "id":
            continue
        comps = p.strand_components[li]
        new: dict[tuple, dict] = {}
        for lab, amp in state.items():
            if kind in ("cross+", "cross-"):
                left, right = lab[i], lab[i + 1]
                for k in range(r):
                    if kind == "cross+":
                        outs = (right + k, left - k)
                    else:
                        outs = (right - k, left + k)
                    if not (0 <= outs[0] < r and 0 <= outs[1] < r):
                        continue
                    w = crossing_weight(r, 1 if kind == "cross+" else -1, (left, right), outs,
                                        (comps[i], comps[i + 1]), n)
                    wd = {tuple(x // 2 for x in e): c for e, c in w.terms.items()}
                    nl = lab[:i] + outs + lab[i + 2:]
                    add_into(new.setdefault(nl, {}), amp, wd)
            elif kind in ("cup-coev", "cup-coev*"):
                comp = p.strand_components[li + 1][i]
                for t in range(r):
                    qe, xe = _cup_cap_weight(kind, r, t)
                    e = [0] * n
                    e[comp] += xe
                    nl = lab[:i] + (t, t) + lab[i:]
                    add_into(new.setdefault(nl, {}), amp, {tuple(e): root_power(m, qe)})
            else:
                if lab[i] != lab[i + 1]:
                    continue
                t = lab[i]
                qe, xe = _cup_cap_weight(kind, r, t)
                e = [0] * n
                e[comps[i]] += xe
                nl = lab[:i] + lab[i + 2:]
                add_into(new.setdefault(nl, {}), amp, {tuple(e): root_power(m, qe)})
        state = {}
        for lab, amp in new.items():
            amp = {e: c for e, c in amp.items() if not c.is_zero()}
            if amp:
                state[lab] = amp
    final = state.get((0,), {})
    return LaurentPoly(vars_, {tuple(2 * x for x in e): c for e, c in final.items()}, CYCLOTOMIC, m)


def _modular_bracket(p: TangleProgram, r: int, backend: str | None) -> LaurentPoly:
    m = 2 * r
    coeffs, _ = _modular.evaluate(p, r, backend=backend)
    terms = {(2 * e,): CycNum._raw(m, vec) for e, vec in coeffs.items()}
    return LaurentPoly(("x",), terms, CYCLOTOMIC, m)


@dataclass
class Bracket:
    poly: LaurentPoly
    linking: list[list[int]]
    writhe: list[int]
    engine: str


def evaluate_bracket(p: TangleProgram, r: int, engine: str = "auto", backend: str | None = None) -> Bracket:
    """Scalar <T> of a (1,1)-tangle at q = zeta_2r, plus the linking record.

    engine: "auto" (modular for knots, reference otherwise), "modular",
    or "reference". backend selects the modular kernel ("numba"/"numpy").
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    if not p.validated:
        validate(p)
    ld = linking_data(p)
    if engine == "auto":
        engine = "modular" if p.n_components == 1 else "reference"
    if engine == "modular":
        if p.n_components != 1:
            raise ValueError("the modular engine handles knots only")
        poly = _modular_bracket(p, r, backend)
    elif engine == "reference":
        poly = _reference_bracket(p, r)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return Bracket(poly, ld.matrix, ld.writhe, engine)


# ---------------------------------------------------------------- modified dimension

@dataclass
class ModifiedDimension:
    """d(alpha) = numerator / denominator as Laurent polynomials in x = zeta^alpha."""

    r: int
    numerator: LaurentPoly
    denominator: LaurentPoly


def modified_dimension(r: int) -> ModifiedDimension:
    """Closed form -zeta^(r(1-r)/2) (zeta x - zeta^-1 x^-1) / (x^r - x^-r).

    Also checked against the product prod_{j=2}^{r} 1/(zeta^j x - zeta^-j x^-1)
    by cross-multiplication.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    m = 2 * r
    v = ("x",)
    pre = -root_power(m, r * (1 - r) // 2)
    num = LaurentPoly.from_exps(v, {1: pre * root_power(m, 1), -1: -pre * root_power(m, -1)}, CYCLOTOMIC, m)
    den = LaurentPoly.from_exps(v, {r: 1, -r: -1}, CYCLOTOMIC, m)
    prod = LaurentPoly.constant(v, 1, CYCLOTOMIC, m)
    for j in range(2, r + 1):
        prod = prod * LaurentPoly.from_exps(v, {1: root_power(m, j), -1: -root_power(m, -j)}, CYCLOTOMIC, m)
    # num/den == 1/prod  <=>  num*prod == den
    if num * prod != den:
        raise AssertionError("modified dimension closed and product forms disagree")
    return ModifiedDimension(r, num, den)


# ---------------------------------------------------------------- ADO invariant

@dataclass
class AdoResult:
    knot: str
    r: int
    hat: LaurentPoly | None
    prefactor: dict
    denominator_status: str
    n_numerator: LaurentPoly = field(repr=False, default=None)
    n_denominator: LaurentPoly = field(repr=False, default=None)
    residual: LaurentPoly | None = field(repr=False, default=None)

    def to_json(self) -> dict:
        out = {
            "knot": self.knot,
            "r": self.r,
            "denominator_status": self.denominator_status,
            "prefactor": self.prefactor,
            "hat": self.hat.to_json() if self.hat is not None else None,
        }
        if self.residual is not None:
            out["hat_rational"] = {"num": self.residual.to_json(), "den": self.n_denominator.to_json()}
        return out


def hat_from_bracket(bracket: LaurentPoly, r: int, framing_shift: int) -> LaurentPoly:
    """(x - x^-1) * T'(zeta^-1 x) where T' = x^framing_shift * <T>."""
    m = 2 * r
    v = bracket.vars
    t = bracket.shift(v[0], 2 * framing_shift)
    t = scale_substitute(t, v[0], root_power(m, -1))
    return t * LaurentPoly.from_exps(v, {1: 1, -1: -1}, CYCLOTOMIC, m)


def ado_invariant(p: TangleProgram, r: int, framing: str = "zero", engine: str = "auto",
                  backend: str | None = None) -> AdoResult:
    """Hat-normalized ADO invariant of a knot.

    N(alpha) = d(alpha) * x^(f(1-r)) * <T>, f = -writhe for zero framing;
    the hat form is i^(r-1) (x^r - x^-r) N(alpha - 1), which equals
    (x - x^-1) T'(zeta^-1 x) and is a Laurent polynomial over Q(zeta_2r).
    The alpha^2 part of the framing factor goes to the prefactor record.
    """
    if not p.validated:
        validate(p)
    if p.n_components != 1:
        raise ValueError("ado_invariant expects a knot (one component)")
    br = evaluate_bracket(p, r, engine=engine, backend=backend)
    w = br.writhe[0]
    f = -w if framing == "zero" else 0
    if framing not in ("zero", "blackboard"):
        raise ValueError("framing must be 'zero' or 'blackboard'")
    shift = f * (1 - r)
    hat = hat_from_bracket(br.poly, r, shift)
    d = modified_dimension(r)
    tprime = br.poly.shift("x", 2 * shift)
    prefactor = {
        "linking": br.linking,
        "writhe": br.writhe,
        "framing": f,
        # zeta^(f alpha^2 / 2), kept symbolic
        "alpha2_half_exponent": f,
    }
    return AdoResult(
        knot=p.name, r=r, hat=hat, prefactor=prefactor, denominator_status=FULLY_CANCELLED,
        n_numerator=d.numerator * tprime, n_denominator=d.denominator,
    )


def murakami_41(r: int) -> AdoResult:
    """Figure-eight hat invariant from the compact single-sum formula.

    sum_{k=0}^{r-1} x^(2k+1) (zeta^-2k x^-2; zeta^2)_(2k+1).
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    m = 2 * r
    total: dict[int, CycNum] = {}
    for k in range(r):
        term = {2 * k + 1: CycNum.one(m)}
        for l in range(2 * k + 1):
            c = -root_power(m, -2 * k + 2 * l)
            new = dict(term)
            for e, v in term.items():
                t = v * c
                new[e - 2] = new[e - 2] + t if e - 2 in new else t
            term = new
        for e, v in term.items():
            total[e] = total[e] + v if e in total else v
    hat = LaurentPoly(("x",), {(2 * e,): c for e, c in total.items()}, CYCLOTOMIC, m)
    return AdoResult(knot="4_1", r=r, hat=hat,
                     prefactor={"linking": [[0]], "writhe": [0], "framing": 0, "alpha2_half_exponent": 0},
                     denominator_status=FULLY_CANCELLED)


def hat_over_sine(hat: LaurentPoly, r: int) -> LaurentPoly:
    """hat / (x^r - x^-r) when exact; raises InexactDivision otherwise."""
    m = 2 * r
    den = LaurentPoly.from_exps(hat.vars, {r: 1, -r: -1}, CYCLOTOMIC, m)
    return exact_div(hat, den)


__all__ = [
    "AdoResult", "Bracket", "FULLY_CANCELLED", "RESIDUAL", "LabelError", "ModifiedDimension",
    "ado_invariant", "crossing_weight", "evaluate_bracket", "hat_from_bracket", "hat_over_sine",
    "modified_dimension", "murakami_41",
]

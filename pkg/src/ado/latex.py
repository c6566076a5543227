"""LaTeX rendering of hat invariants as sums of X^{(n)} = x^n - x^{-n}."""

from __future__ import annotations

from fractions import Fraction

from .cyclo import CycNum, root_power
from .poly import LaurentPoly


def _monomial(c: CycNum) -> tuple[int, int] | None:
    """(sign, k) with c = sign * q^k, 0 <= k < m/2, when c is a signed root of unity."""
    m = c.conductor
    for k in range(m):
        if c == root_power(m, k):
            return (1, k) if k < m // 2 or m % 2 else (-1, k - m // 2)
    return None


def _qpoly_tex(c: CycNum) -> str:
    """c as a polynomial in q = zeta_2r: a signed monomial when possible,
    otherwise power-basis coordinates, highest power first."""
    mono = _monomial(c)
    if mono is not None:
        sign, k = mono
        body = "1" if k == 0 else "q" if k == 1 else f"q^{{{k}}}" if k > 9 else f"q^{k}"
        return body if sign > 0 else "-" + body
    parts = []
    for k in range(len(c.coeffs) - 1, -1, -1):
        v = c.coeffs[k]
        if not v:
            continue
        mag = abs(v)
        sign = "-" if v < 0 else "+"
        if k == 0:
            body = _frac(mag)
        else:
            mono = "q" if k == 1 else f"q^{{{k}}}" if k > 9 else f"q^{k}"
            body = mono if mag == 1 else f"{_frac(mag)}{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += sign + body
    return s


def _frac(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"\\tfrac{{{v.numerator}}}{{{v.denominator}}}"


def x_basis(hat: LaurentPoly) -> dict[int, CycNum] | None:
    """Coefficients c_n with hat = sum c_n X^{(n)}, or None if hat is not antisymmetric."""
    d = {e[0]: c for e, c in hat.terms.items()}
    out = {}
    for e2, c in d.items():
        if e2 % 2:
            return None
        if e2 > 0:
            if d.get(-e2) != -c:
                return None
            out[e2 // 2] = c
        elif e2 == 0 or (-e2) not in d:
            return None
    return out


def hat_row(hat: LaurentPoly) -> str:
    """One table row body, e.g. q^2X^{(5)}+qX^{(1)}."""
    basis = x_basis(hat)
    if basis is None:
        return hat.to_str()
    if not basis:
        return "0"
    s = ""
    for n in sorted(basis, reverse=True):
        body = _qpoly_tex(basis[n])
        x = f"X^{{({n})}}"
        if _monomial(basis[n]) is not None or len([v for v in basis[n].coeffs if v]) == 1:
            if body.startswith("-"):
                term, sign = body[1:], "-"
            else:
                term, sign = body, "+"
            term = "" if term == "1" else term
        else:
            term, sign = f"({body})", "+"
        s += (sign if s or sign == "-" else "") + term + x
    return s


def hat_table(knot: str, rows: dict[int, LaurentPoly]) -> str:
    lines = ["\\begin{array}{c|l}", f"r & \\hat N_{{{knot}}}^r(\\alpha) \\\\\\hline"]
    for r in sorted(rows):
        lines.append(f"{r} & {hat_row(rows[r])} \\\\")
    lines.append("\\end{array}")
    return "\n".join(lines) + "\n"

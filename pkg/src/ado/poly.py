"""Laurent polynomials over Q(zeta_m) or over Q(q), plus q-Pochhammer symbols.

Two coefficient regimes share one LaurentPoly container:

* cyclotomic: coefficients are CycNum of a fixed conductor;
* rational: coefficients are QFrac, exact rational functions of q.

Exponents are stored doubled so half-integer powers stay exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

import numpy as np

from .cyclo import CycNum, root_power


class EvaluationPoleError(ArithmeticError):
    """A q-denominator vanishes at the requested root of unity."""

    def __init__(self, r, message: str | None = None):
        self.r = r
        super().__init__(message or f"coefficient denominator vanishes at q = zeta_{2 * r} (r={r})")


class InexactDivision(ArithmeticError):
    """Divisor does not divide; carries the nonzero remainder."""

    def __init__(self, quotient, remainder):
        self.quotient = quotient
        self.remainder = remainder
        super().__init__(f"nonzero remainder: {remainder}")


# --------------------------------------------------------------------- QPoly

class QPoly:
    """Integer Laurent polynomial in q, dense: coeffs[i] multiplies q^(low+i)."""

    __slots__ = ("low", "coeffs")

    def __init__(self, low: int = 0, coeffs=()):
        coeffs = list(coeffs)
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        end = len(coeffs)
        while end > start and coeffs[end - 1] == 0:
            end -= 1
        self.coeffs = tuple(int(c) for c in coeffs[start:end])
        self.low = low + start if self.coeffs else 0

    @classmethod
    def mono(cls, e: int, c: int = 1) -> "QPoly":
        return cls(e, (c,))

    @classmethod
    def const(cls, c: int) -> "QPoly":
        return cls(0, (c,))

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "QPoly":
        d = {e: c for e, c in d.items() if c}
        if not d:
            return cls()
        lo, hi = min(d), max(d)
        arr = [0] * (hi - lo + 1)
        for e, c in d.items():
            arr[e - lo] = c
        return cls(lo, arr)

    def to_dict(self) -> dict[int, int]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPoly.const(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.low, self.coeffs))

    def __add__(self, other):
        if isinstance(other, int):
            other = QPoly.const(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        arr = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            arr[self.low - lo + i] += c
        for i, c in enumerate(other.coeffs):
            arr[other.low - lo + i] += c
        return QPoly(lo, arr)

    __radd__ = __add__

    def __neg__(self):
        return QPoly(self.low, [-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = QPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QPoly(self.low, [c * other for c in self.coeffs])
        if not isinstance(other, QPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return QPoly()
        a, b = self.coeffs, other.coeffs
        if len(a) * len(b) > 4000:
            prod = np.convolve(np.array(a, dtype=object), np.array(b, dtype=object)).tolist()
        else:
            prod = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] += x * y
        return QPoly(self.low + other.low, prod)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self.coeffs) == 1 and abs(self.coeffs[0]) == 1:
                return QPoly(-self.low * -e, (self.coeffs[0] ** -e,))
            raise ValueError("negative power of a non-unit q-polynomial")
        out = QPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divexact(self, other: "QPoly") -> "QPoly":
        """Exact quotient self / other; raises InexactDivision otherwise."""
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.coeffs:
            return QPoly()
        rem = list(self.coeffs)
        d = other.coeffs
        lead = d[-1]
        nq = len(rem) - len(d) + 1
        if nq <= 0:
            raise InexactDivision(QPoly(), self)
        quot = [0] * nq
        for i in range(nq - 1, -1, -1):
            c = rem[i + len(d) - 1]
            if c == 0:
                continue
            if c % lead:
                raise InexactDivision(QPoly(), self)
            t = c // lead
            quot[i] = t
            for j, v in enumerate(d):
                rem[i + j] -= t * v
        if any(rem):
            raise InexactDivision(QPoly(self.low - other.low, quot), QPoly(self.low, rem))
        return QPoly(self.low - other.low, quot)

    def shift(self, k: int) -> "QPoly":
        """Multiply by q^k."""
        return QPoly(self.low + k, self.coeffs) if self.coeffs else self

    def subs_power(self, k: int) -> "QPoly":
        """Substitute q -> q^k (k nonzero)."""
        if not self.coeffs:
            return self
        return QPoly.from_dict({e * k: c for e, c in self.to_dict().items()})

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def eval_int(self, v) -> Fraction:
        return sum((Fraction(v) ** e * c for e, c in self.to_dict().items()), Fraction(0))

    def eval_root(self, m: int, step: int = 1) -> CycNum:
        """Value at q = zeta_m^step."""
        acc: dict[int, int] = {}
        for e, c in self.to_dict().items():
            k = (e * step) % m
            acc[k] = acc.get(k, 0) + c
        return CycNum.from_poly(m, acc)

    def __repr__(self):
        return f"QPoly({self.to_str()})"

    def to_str(self) -> str:
        return _poly_str(self.to_dict(), "q")

    @classmethod
    def from_str(cls, s: str) -> "QPoly":
        return cls.from_dict({e: int(c) for e, c in _parse_poly(s, "q").items()})


def _poly_str(d: dict, var: str) -> str:
    if not d:
        return "0"
    parts = []
    for e in sorted(d, reverse=True):
        c = d[e]
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if mono and abs(c) == 1:
            parts.append(("-" if c < 0 else "+") + mono)
        elif mono:
            parts.append(f"{'+' if c > 0 else ''}{c}*{mono}")
        else:
            parts.append(f"{'+' if c > 0 else ''}{c}")
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


_TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(?:([a-z])(?:\^\(?(-?\d+)\)?)?)?\s*")


def _parse_poly(s: str, var: str) -> dict[int, Fraction]:
    s = s.replace(" ", "")
    out: dict[int, Fraction] = {}
    pos = 0
    if not s:
        raise ValueError("empty polynomial string")
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {s!r} at {pos}")
        sign, coef, v, e = m.groups()
        if coef is None and v is None:
            raise ValueError(f"cannot parse polynomial {s!r} at {pos}")
        if v is not None and v != var:
            raise ValueError(f"unexpected variable {v!r}")
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        exp = 0 if v is None else (int(e) if e is not None else 1)
        out[exp] = out.get(exp, Fraction(0)) + c
        pos = m.end()
    return {e: c for e, c in out.items() if c}


# --------------------------------------------------------------------- QFrac

def _to_sympy(p: QPoly):
    import sympy

    q = sympy.Symbol("q")
    return sympy.Poly(list(reversed(p.coeffs)), q, domain="ZZ")


def _from_sympy(sp) -> QPoly:
    cs = [int(c) for c in reversed(sp.all_coeffs())]
    return QPoly(0, cs)


class QFrac:
    """Exact element of Q(q): num/den with den a polynomial, den(0) != 0,
    positive leading coefficient, coprime to num."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: QPoly | int, den: QPoly | int = 1, _normalized: bool = False):
        if isinstance(num, int):
            num = QPoly.const(num)
        if isinstance(den, int):
            den = QPoly.const(den)
        self._hash = None
        if _normalized:
            self.num, self.den = num, den
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Q(q)")
        if num.is_zero():
            self.num, self.den = QPoly(), QPoly.const(1)
            return
        # move q-powers of den into num
        num = num.shift(-den.low)
        den = QPoly(0, den.coeffs)
        if len(den.coeffs) > 1:
            nlow = num.low
            npoly = QPoly(0, num.coeffs)
            g = _to_sympy(npoly).gcd(_to_sympy(den))
            if g.degree() > 0:
                npoly = _from_sympy(_to_sympy(npoly).exquo(g))
                den = _from_sympy(_to_sympy(den).exquo(g))
            num = npoly.shift(nlow)
        c = gcd(num.content(), den.content())
        if den.coeffs[-1] < 0:
            c = -c
        if c != 1:
            num = QPoly(num.low, [x // c for x in num.coeffs])
            den = QPoly(den.low, [x // c for x in den.coeffs])
        self.num, self.den = num, den

    @classmethod
    def from_qpoly(cls, p: QPoly) -> "QFrac":
        return cls(p, QPoly.const(1), _normalized=True)

    @classmethod
    def const(cls, c) -> "QFrac":
        c = Fraction(c)
        return cls(QPoly.const(c.numerator), QPoly.const(c.denominator))

    @classmethod
    def mono(cls, e: int, c=1) -> "QFrac":
        c = Fraction(c)
        return cls(QPoly.mono(e, c.numerator), QPoly.const(c.denominator))

    @classmethod
    def zero(cls) -> "QFrac":
        return cls(QPoly(), QPoly.const(1), _normalized=True)

    @classmethod
    def one(cls) -> "QFrac":
        return cls(QPoly.const(1), QPoly.const(1), _normalized=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.coeffs == (1,)

    def _coerce(self, other):
        if isinstance(other, QFrac):
            return other
        if isinstance(other, QPoly):
            return QFrac.from_qpoly(other)
        if isinstance(other, (int, Fraction)):
            return QFrac.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            if self.den.coeffs == (1,):
                return QFrac(self.num + o.num, self.den, _normalized=True)
            return QFrac(self.num + o.num, self.den)
        return QFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return QFrac(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den.coeffs == (1,) and o.den.coeffs == (1,):
            return QFrac(self.num * o.num, self.den, _normalized=True)
        return QFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("division by zero in Q(q)")
        return QFrac(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return QFrac.one() / (self ** (-e))
        return QFrac(self.num**e, self.den**e)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def shift(self, k: int) -> "QFrac":
        return QFrac(self.num.shift(k), self.den, _normalized=True)

    def subs_power(self, k: int) -> "QFrac":
        """q -> q^k."""
        return QFrac(self.num.subs_power(k), self.den.subs_power(k))

    def eval_root(self, r: int, conductor: int | None = None) -> CycNum:
        """Value at q = zeta_{2r}, embedded in conductor (multiple of 2r)."""
        m = conductor or 2 * r
        if m % (2 * r):
            raise ValueError("conductor must be a multiple of 2r")
        step = m // (2 * r)
        n = self.num.eval_root(m, step)
        if self.den.coeffs == (1,):
            return n
        d = self.den.eval_root(m, step)
        if d.is_zero():
            raise EvaluationPoleError(r)
        return n / d

    def eval_at_one(self) -> Fraction:
        d = self.den.eval_int(1)
        if d == 0:
            raise EvaluationPoleError(None, "coefficient denominator vanishes at q = 1")
        return self.num.eval_int(1) / d

    def monomial_data(self):
        """(c, k) if self == c*q^k with c rational, else None."""
        if len(self.num.coeffs) == 1 and len(self.den.coeffs) == 1:
            return Fraction(self.num.coeffs[0], self.den.coeffs[0]), self.num.low
        return None

    def to_str(self) -> str:
        if self.den.coeffs == (1,):
            return self.num.to_str()
        return f"({self.num.to_str()})/({self.den.to_str()})"

    def __repr__(self):
        return f"QFrac({self.to_str()})"

    def to_json(self) -> str:
        return f"{self.num.to_str()}/{self.den.to_str()}"

    @classmethod
    def from_json(cls, s: str) -> "QFrac":
        """Parse "num/den" where num and den are q-polynomial strings."""
        num, _, den = s.strip().partition("/")
        num, den = num.strip().strip("()"), (den.strip().strip("()") or "1")
        nd = _parse_poly(num, "q")
        dd = _parse_poly(den, "q")
        l = 1
        for c in list(nd.values()) + list(dd.values()):
            l = l * c.denominator // gcd(l, c.denominator)
        return cls(
            QPoly.from_dict({e: int(c * l) for e, c in nd.items()}),
            QPoly.from_dict({e: int(c * l) for e, c in dd.items()}),
        )


# --------------------------------------------------------------------- LaurentPoly

CYCLOTOMIC = "cyclotomic"
RATIONAL = "rational"


class LaurentPoly:
    """Sparse multivariate Laurent polynomial with doubled exponents."""

    __slots__ = ("vars", "terms", "regime", "conductor")

    def __init__(self, vars, terms=None, regime: str = RATIONAL, conductor: int | None = None):
        self.vars = tuple(vars)
        self.regime = regime
        self.conductor = conductor
        if regime == CYCLOTOMIC and conductor is None:
            raise ValueError("cyclotomic regime needs a conductor")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.vars):
                raise ValueError("exponent arity mismatch")
            if not c.is_zero():
                clean[e] = c
        self.terms = clean

    # -- ring plumbing
    def _zero_coeff(self):
        return CycNum.zero(self.conductor) if self.regime == CYCLOTOMIC else QFrac.zero()

    def _one_coeff(self):
        return CycNum.one(self.conductor) if self.regime == CYCLOTOMIC else QFrac.one()

    def coerce_coeff(self, c):
        if self.regime == CYCLOTOMIC:
            if isinstance(c, CycNum):
                return c
            return CycNum.from_int(self.conductor, c)
        if isinstance(c, QFrac):
            return c
        if isinstance(c, QPoly):
            return QFrac.from_qpoly(c)
        return QFrac.const(c)

    def like(self, terms) -> "LaurentPoly":
        return LaurentPoly(self.vars, terms, self.regime, self.conductor)

    @classmethod
    def zero(cls, vars, regime=RATIONAL, conductor=None) -> "LaurentPoly":
        return cls(vars, {}, regime, conductor)

    @classmethod
    def constant(cls, vars, c, regime=RATIONAL, conductor=None) -> "LaurentPoly":
        p = cls(vars, {}, regime, conductor)
        c = p.coerce_coeff(c)
        return p.like({(0,) * len(p.vars): c})

    @classmethod
    def monomial(cls, vars, exps, c=1, regime=RATIONAL, conductor=None, doubled=False) -> "LaurentPoly":
        """c * prod v_i^e_i; exps are ordinary (or doubled if doubled=True)."""
        p = cls(vars, {}, regime, conductor)
        e2 = tuple(exps) if doubled else tuple(_double(e) for e in exps)
        return p.like({e2: p.coerce_coeff(c)})

    @classmethod
    def from_exps(cls, vars, d: dict, regime=RATIONAL, conductor=None) -> "LaurentPoly":
        """Build from {ordinary exponent (int or tuple): coeff}."""
        p = cls(vars, {}, regime, conductor)
        terms = {}
        for e, c in d.items():
            if not isinstance(e, tuple):
                e = (e,)
            e2 = tuple(_double(x) for x in e)
            c = p.coerce_coeff(c)
            terms[e2] = terms[e2] + c if e2 in terms else c
        return p.like(terms)

    def _check(self, other: "LaurentPoly"):
        if self.vars != other.vars or self.regime != other.regime or self.conductor != other.conductor:
            raise ValueError("incompatible polynomial rings")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.vars, other, self.regime, self.conductor)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (
            self.vars == other.vars
            and self.regime == other.regime
            and self.conductor == other.conductor
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, self.regime, self.conductor, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(self.vars, other, self.regime, self.conductor)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return self.like(out)

    __radd__ = __add__

    def __neg__(self):
        return self.like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(self.vars, other, self.regime, self.conductor)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LaurentPoly":
        c = self.coerce_coeff(c)
        if c.is_zero():
            return self.like({})
        return self.like({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in out:
                    out[e] = out[e] + v
                else:
                    out[e] = v
        return self.like(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) == 1:
                (e, c), = self.terms.items()
                inv = self._one_coeff() / c
                return self.like({tuple(-x for x in e): inv}) ** (-n)
            raise ValueError("negative power of a non-monomial")
        out = LaurentPoly.constant(self.vars, 1, self.regime, self.conductor)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, var: str | int, k2: int) -> "LaurentPoly":
        """Multiply by var^(k2/2) (doubled exponent k2)."""
        i = self.vars.index(var) if isinstance(var, str) else var
        out = {}
        for e, c in self.terms.items():
            e = list(e)
            e[i] += k2
            out[tuple(e)] = c
        return self.like(out)

    # -- queries
    def exponents(self, var: str | int = 0) -> list[Fraction]:
        i = self.vars.index(var) if isinstance(var, str) else var
        return sorted({Fraction(e[i], 2) for e in self.terms})

    def span(self, var: str | int = 0) -> tuple[int, int]:
        """(min, max) doubled exponent in var."""
        i = self.vars.index(var) if isinstance(var, str) else var
        es = [e[i] for e in self.terms]
        return (min(es), max(es)) if es else (0, 0)

    def is_integral(self) -> bool:
        return all(x % 2 == 0 for e in self.terms for x in e)

    def coeff(self, exps) -> object:
        e2 = tuple(_double(x) for x in (exps if isinstance(exps, tuple) else (exps,)))
        return self.terms.get(e2, self._zero_coeff())

    def univariate_dict(self) -> dict[int, object]:
        """{integer exponent: coeff} for a one-variable integral polynomial."""
        if len(self.vars) != 1:
            raise ValueError("not univariate")
        if not self.is_integral():
            raise ValueError("half-integer exponents present")
        return {e[0] // 2: c for e, c in self.terms.items()}

    def map_coeffs(self, f) -> "LaurentPoly":
        return self.like({e: f(c) for e, c in self.terms.items()})

    def __repr__(self):
        return f"LaurentPoly({self.to_str()})"

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if x == 2 else f"{v}^{_fmt_exp(x)}" for v, x in zip(self.vars, e) if x
            )
            cs = c.to_str()
            if not mono:
                parts.append(f"({cs})")
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    # -- JSON
    def to_json(self) -> dict:
        terms = []
        for e in sorted(self.terms):
            c = self.terms[e]
            terms.append({"exp2": list(e), "coeff": c.to_json()})
        return {"vars": list(self.vars), "terms": terms}

    @classmethod
    def from_json(cls, d: dict) -> "LaurentPoly":
        vars = tuple(d["vars"])
        terms = {}
        regime, conductor = RATIONAL, None
        for t in d["terms"]:
            c = t["coeff"]
            if isinstance(c, dict):
                c = CycNum.from_json(c)
                regime, conductor = CYCLOTOMIC, c.conductor
            else:
                c = QFrac.from_json(c)
            terms[tuple(t["exp2"])] = c
        return cls(vars, terms, regime, conductor)


def _double(e) -> int:
    f = Fraction(e) * 2
    if f.denominator != 1:
        raise ValueError(f"exponent {e} is not in (1/2)Z")
    return int(f)


def _fmt_exp(x2: int) -> str:
    return str(x2 // 2) if x2 % 2 == 0 else f"({x2}/2)"


# --------------------------------------------------------------------- operations

def _coeff_power(c, e2: int, regime: str):
    """c^(e2/2) for a unit monomial coefficient c."""
    if e2 % 2 == 0:
        return c ** (e2 // 2)
    # odd doubled exponent needs a square root of c
    if regime == RATIONAL:
        md = c.monomial_data()
        if md is None:
            raise ValueError("non-monomial factor rejected")
        k, q = md
        if q % 2:
            raise ValueError("square root of odd q-power not representable")
        num, den = k.numerator, k.denominator
        rn, rd = _isqrt_exact(num), _isqrt_exact(den)
        if rn is None or rd is None:
            raise ValueError("square root of rational coefficient not representable")
        root = QFrac.mono(q // 2, Fraction(rn, rd))
        return root**e2
    # cyclotomic: c must be +-zeta^s with a square root zeta^(s/2) or zeta^((s+m)/2)
    m = c.conductor
    for s in range(m):
        if c == root_power(m, s):
            if s % 2 == 0:
                return root_power(m, s // 2) ** e2
            if m % 2 == 0 and (s + m) % 2 == 0:
                return root_power(m, (s + m) // 2) ** e2
            raise ValueError("square root not representable at this conductor")
    raise ValueError("non-monomial factor rejected")


def _isqrt_exact(n: int):
    if n < 0:
        return None
    r = int(n**0.5)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand * cand == n:
            return cand
    return None


def _is_unit_coeff(c, regime) -> bool:
    if c.is_zero():
        return False
    if regime == RATIONAL:
        return c.monomial_data() is not None
    return True


def scale_substitute(p: LaurentPoly, var: str, factor) -> LaurentPoly:
    """Substitute var -> factor * var, factor a nonzero unit monomial coefficient.

    In the rational regime the factor must be c*q^k; a LaurentPoly factor
    must be a single constant term.
    """
    if isinstance(factor, LaurentPoly):
        if len(factor.terms) != 1:
            raise ValueError("non-monomial factor rejected")
        (e, c), = factor.terms.items()
        if any(e):
            raise ValueError("factor must not involve the polynomial variables")
        factor = c
    factor = p.coerce_coeff(factor)
    if not _is_unit_coeff(factor, p.regime):
        raise ValueError("non-monomial factor rejected")
    i = p.vars.index(var)
    cache: dict[int, object] = {}
    out = {}
    for e, c in p.terms.items():
        k = e[i]
        if k not in cache:
            cache[k] = _coeff_power(factor, k, p.regime)
        out[e] = c * cache[k]
    return p.like(out)


def pochhammer(base: LaurentPoly, step, n: int) -> LaurentPoly:
    """(base; step)_n = prod_{k<n} (1 - base*step^k); 1 for n = 0, 0 for n < 0."""
    if n < 0:
        return base.like({})
    one = LaurentPoly.constant(base.vars, 1, base.regime, base.conductor)
    if not isinstance(step, LaurentPoly):
        step = LaurentPoly.constant(base.vars, step, base.regime, base.conductor)
    out = one
    cur = base
    for _ in range(n):
        out = out * (one - cur)
        cur = cur * step
    return out


def exact_div(num: LaurentPoly, den: LaurentPoly, var: str | None = None) -> LaurentPoly:
    """Exact quotient num/den of univariate Laurent polynomials.

    Raises InexactDivision carrying the remainder when den does not divide num.
    """
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if len(num.vars) != 1:
        raise ValueError("exact_div handles one distinguished variable")
    if num.is_zero():
        return num
    nd = {e[0]: c for e, c in num.terms.items()}
    dd = {e[0]: c for e, c in den.terms.items()}
    # work on doubled exponents; den and num must share parity classes
    dlo, dhi = min(dd), max(dd)
    nlo = min(nd)
    lead = dd[dhi]
    rem = dict(nd)
    quot = {}
    while rem:
        top = max(rem)
        if top - dhi < nlo - dlo:
            break
        c = rem[top] / lead
        k = top - dhi
        quot[k] = c
        for e, dc in dd.items():
            t = e + k
            v = rem.get(t)
            nv = (-(c * dc)) if v is None else v - c * dc
            if nv.is_zero():
                rem.pop(t, None)
            else:
                rem[t] = nv
    q = num.like({(k,): c for k, c in quot.items()})
    if rem:
        raise InexactDivision(q, num.like({(k,): c for k, c in rem.items()}))
    return q


def eval_q_at_root(p: LaurentPoly, r: int, conductor: int | None = None) -> LaurentPoly:
    """Specialize a rational-regime polynomial at q = zeta_{2r}."""
    if p.regime != RATIONAL:
        raise ValueError("expected a rational-in-q polynomial")
    m = conductor or 2 * r
    out = {}
    for e, c in p.terms.items():
        v = c.eval_root(r, m)
        if not v.is_zero():
            out[e] = v
    return LaurentPoly(p.vars, out, CYCLOTOMIC, m)


def embed_poly(p: LaurentPoly, m2: int) -> LaurentPoly:
    from .cyclo import embed

    if p.regime != CYCLOTOMIC:
        raise ValueError("embedding applies to cyclotomic polynomials")
    return LaurentPoly(p.vars, {e: embed(c, m2) for e, c in p.terms.items()}, CYCLOTOMIC, m2)


def evaluate(p: LaurentPoly, values: dict[str, CycNum | QFrac]) -> object:
    """Evaluate at unit values for the named variables (integral exponents)."""
    acc = p._zero_coeff()
    for e, c in p.terms.items():
        t = c
        for v, x in zip(p.vars, e):
            if x:
                if x % 2:
                    raise ValueError("half-integer exponent in evaluation")
                t = t * (values[v] ** (x // 2))
        acc = acc + t
    return acc


def X(n: int, var: str = "x", coeff=1, regime=RATIONAL, conductor=None) -> LaurentPoly:
    """x^n - x^-n."""
    return LaurentPoly.from_exps((var,), {n: coeff, -n: -coeff} if n else {}, regime, conductor)

"""The q-Weyl algebra and its actions.

An element is a finite sum of c(q) * x^a * y^b with all x factors left of
all y factors (normal order). Each pair satisfies y x = q x y; distinct
pairs commute. Besides the ordinary pairs (x_i, y_i), acting on functions
of x by multiplication and x -> q x, an element may carry hatted pairs
(xh_j, yh_j) acting on functions of an integer a_j by multiplication with
q^(a_j) and the shift a_j -> a_j + 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cyclo import CycNum, root_power
from .poly import CYCLOTOMIC, RATIONAL, LaurentPoly, QFrac, QPoly, scale_substitute


class WindowUnderflow(LookupError):
    """A shift operator needs a value outside the supplied window."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"value at index {index} is outside the window")


def _qfrac(c) -> QFrac:
    if isinstance(c, QFrac):
        return c
    if isinstance(c, QPoly):
        return QFrac.from_qpoly(c)
    return QFrac.const(c)


def q(k: int = 1, c=1) -> QFrac:
    """The scalar c * q^k."""
    return QFrac.mono(k, c)


class WeylElement:
    """Normal-ordered element with n ordinary and m hatted pairs.

    terms maps (x-exponents, y-exponents), each a tuple of length n+m
    (ordinary pairs first), to nonzero QFrac coefficients.
    """

    __slots__ = ("n", "m", "terms")

    def __init__(self, n: int = 1, m: int = 0, terms=None):
        self.n, self.m = n, m
        k = n + m
        clean = {}
        for (xe, ye), c in (terms or {}).items():
            xe, ye = tuple(xe), tuple(ye)
            if len(xe) != k or len(ye) != k:
                raise ValueError("monomial arity mismatch")
            c = _qfrac(c)
            if not c.is_zero():
                clean[(xe, ye)] = c
        self.terms = clean

    # -- constructors
    @classmethod
    def constant(cls, c, n: int = 1, m: int = 0) -> "WeylElement":
        z = (0,) * (n + m)
        return cls(n, m, {(z, z): c})

    @classmethod
    def monomial(cls, xexp, yexp, c=1, n: int | None = None, m: int = 0) -> "WeylElement":
        xexp, yexp = tuple(xexp), tuple(yexp)
        n = len(xexp) - m if n is None else n
        return cls(n, m, {(xexp, yexp): c})

    @classmethod
    def generators(cls, n: int = 1, m: int = 0):
        """(xs, ys, xhs, yhs) as lists of single-generator elements."""
        k = n + m

        def unit(i):
            return tuple(1 if j == i else 0 for j in range(k))

        z = (0,) * k
        xs = [cls(n, m, {(unit(i), z): 1}) for i in range(k)]
        ys = [cls(n, m, {(z, unit(i)): 1}) for i in range(k)]
        return xs[:n], ys[:n], xs[n:], ys[n:]

    def like(self, terms) -> "WeylElement":
        return WeylElement(self.n, self.m, terms)

    # -- ring
    def _coerce(self, other) -> "WeylElement":
        if isinstance(other, WeylElement):
            if (other.n, other.m) != (self.n, self.m):
                raise ValueError("operator arity mismatch")
            return other
        return WeylElement.constant(other, self.n, self.m)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for k, c in o.terms.items():
            s = out[k] + c if k in out else c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return self.like(out)

    __radd__ = __add__

    def __neg__(self):
        return self.like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return multiply(self, self._coerce(other))

    def __rmul__(self, other):
        return multiply(self._coerce(other), self)

    def __pow__(self, e: int):
        if e < 0:
            if len(self.terms) == 1:
                ((xe, ye), c), = self.terms.items()
                # (c x^a y^b)^-1 = c^-1 y^-b x^-a = c^-1 q^(a.b) x^-a y^-b
                qe = sum(a * b for a, b in zip(xe, ye))
                inv = WeylElement(self.n, self.m, {
                    (tuple(-a for a in xe), tuple(-b for b in ye)): QFrac.one() / c * QFrac.mono(qe)
                })
                return inv ** (-e)
            raise ValueError("negative power of a non-monomial operator")
        out = WeylElement.constant(1, self.n, self.m)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            try:
                other = self._coerce(other)
            except (ValueError, TypeError):
                return NotImplemented
        return (self.n, self.m, self.terms) == (other.n, other.m, other.terms)

    def __hash__(self):
        return hash((self.n, self.m, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # -- queries
    def y_span(self, i: int = 0) -> tuple[int, int]:
        ys = [ye[i] for _, ye in self.terms]
        return (min(ys), max(ys)) if ys else (0, 0)

    def x_span(self, i: int = 0) -> tuple[int, int]:
        xs = [xe[i] for xe, _ in self.terms]
        return (min(xs), max(xs)) if xs else (0, 0)

    def y_coefficients(self, i: int = 0) -> dict[int, "WeylElement"]:
        """Group terms by the exponent of y_i; values have that y_i removed."""
        out: dict[int, dict] = {}
        for (xe, ye), c in self.terms.items():
            ye2 = ye[:i] + (0,) + ye[i + 1:]
            out.setdefault(ye[i], {})[(xe, ye2)] = c
        return {k: self.like(v) for k, v in out.items()}

    def shift_exponents(self, dx=None, dy=None) -> "WeylElement":
        """Multiply by x^dx on the left and y^dy on the right (no reordering needed)."""
        k = self.n + self.m
        dx = tuple(dx or (0,) * k)
        dy = tuple(dy or (0,) * k)
        return self.like({
            (tuple(a + b for a, b in zip(xe, dx)), tuple(a + b for a, b in zip(ye, dy))): c
            for (xe, ye), c in self.terms.items()
        })

    def map_coeffs(self, f) -> "WeylElement":
        return self.like({k: f(c) for k, c in self.terms.items()})

    # -- display
    def var_names(self) -> tuple[list[str], list[str]]:
        if self.n == 1 and self.m == 0:
            xs, ys = ["x"], ["y"]
        else:
            xs = [f"x{i + 1}" for i in range(self.n)]
            ys = [f"y{i + 1}" for i in range(self.n)]
        xs += [f"xh{j + 1}" for j in range(self.m)]
        ys += [f"yh{j + 1}" for j in range(self.m)]
        return xs, ys

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        xs, ys = self.var_names()
        parts = []
        for (xe, ye) in sorted(self.terms, key=lambda k: (k[1], k[0])):
            c = self.terms[(xe, ye)]
            mono = [_pw(v, e) for v, e in zip(xs, xe) if e] + [_pw(v, e) for v, e in zip(ys, ye) if e]
            cs = c.to_str()
            if not mono:
                parts.append(f"({cs})")
            elif cs == "1":
                parts.append("*".join(mono))
            else:
                parts.append(f"({cs})*" + "*".join(mono))
        return " + ".join(parts)

    def __repr__(self):
        return f"WeylElement({self.to_str()})"

    # -- JSON
    def to_json(self) -> dict:
        return {
            "pairs": self.n,
            "hatted": self.m,
            "terms": [
                {"xexp": list(xe), "yexp": list(ye), "coeff": self.terms[(xe, ye)].to_json()}
                for (xe, ye) in sorted(self.terms)
            ],
        }

    @classmethod
    def from_json(cls, d: dict) -> "WeylElement":
        n, m = int(d["pairs"]), int(d.get("hatted", 0))
        terms = {}
        for t in d["terms"]:
            terms[(tuple(t["xexp"]), tuple(t["yexp"]))] = QFrac.from_json(t["coeff"])
        return cls(n, m, terms)


def _pw(v: str, e: int) -> str:
    return v if e == 1 else f"{v}^{e}"


def multiply(a: WeylElement, b: WeylElement) -> WeylElement:
    """Normal-ordered product: y^b x^c = q^(b.c) x^c y^b."""
    if (a.n, a.m) != (b.n, b.m):
        raise ValueError("operator arity mismatch")
    out: dict = {}
    for (xa, ya), ca in a.terms.items():
        for (xb, yb), cb in b.terms.items():
            qe = sum(u * v for u, v in zip(ya, xb))
            key = (tuple(u + v for u, v in zip(xa, xb)), tuple(u + v for u, v in zip(ya, yb)))
            c = (ca * cb).shift(qe)
            out[key] = out[key] + c if key in out else c
    return a.like(out)


# ---------------------------------------------------------------- actions

def _eval_coeff(c: QFrac, r: int, conductor: int) -> CycNum:
    return c.eval_root(r, conductor)


@lru_cache(maxsize=4096)
def _zeta(m: int, e: int) -> CycNum:
    return root_power(m, e)


def act_on_laurent(a: WeylElement, p: LaurentPoly, r: int) -> LaurentPoly:
    """Apply an operator to a cyclotomic Laurent polynomial at q = zeta_2r.

    x_i multiplies by x_i; y_i substitutes x_i -> zeta_2r * x_i. The
    polynomial's conductor must be a multiple of 2r.
    """
    if a.m:
        raise ValueError("hatted pairs act on discrete tables, not polynomials")
    if p.regime != CYCLOTOMIC:
        raise ValueError("expected a cyclotomic polynomial")
    if len(p.vars) != a.n:
        raise ValueError("operator arity does not match the polynomial's variables")
    mcond = p.conductor
    if mcond % (2 * r):
        raise ValueError("conductor must be a multiple of 2r")
    step = mcond // (2 * r)
    out: dict = {}
    for (xe, ye), c in a.terms.items():
        cv = _eval_coeff(c, r, mcond)
        if cv.is_zero():
            continue
        for e2, pc in p.terms.items():
            # zeta^(y . e) with e the ordinary exponents (doubled -> halve)
            tw2 = sum(y * e for y, e in zip(ye, e2))
            if tw2 % 2:
                if step % 2:
                    raise ValueError("half-integer exponent needs a larger conductor")
                zexp = tw2 * step // 2
            else:
                zexp = tw2 // 2 * step
            v = cv * pc
            if zexp % mcond:
                v = v * _zeta(mcond, zexp % mcond)
            key = tuple(u + 2 * x for u, x in zip(e2, xe))
            if key in out:
                s = out[key] + v
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
            else:
                out[key] = v
    return p.like(out)


class SequenceFunction:
    """A finite contiguous window N -> value (QPoly or QFrac)."""

    def __init__(self, values: dict[int, object]):
        if not values:
            raise ValueError("empty window")
        keys = sorted(values)
        if keys != list(range(keys[0], keys[-1] + 1)):
            raise ValueError("window must be contiguous")
        self.values = {k: _qfrac(v) for k, v in values.items()}
        self.lo, self.hi = keys[0], keys[-1]

    def __getitem__(self, N: int) -> QFrac:
        if N not in self.values:
            raise WindowUnderflow(N)
        return self.values[N]


def act_on_sequence(a: WeylElement, seq: SequenceFunction, N: int) -> QFrac:
    """sum c(q) q^(N*xexp) J_(N+yexp), one ordinary pair."""
    if a.n != 1 or a.m:
        raise ValueError("sequence action needs exactly one ordinary pair")
    total = QFrac.zero()
    for (xe, ye), c in a.terms.items():
        total = total + c.shift(N * xe[0]) * seq[N + ye[0]]
    return total


def act_discrete(a: WeylElement, table: dict[tuple, LaurentPoly], points=None) -> dict[tuple, LaurentPoly]:
    """Apply an operator with hatted pairs to a table a -> LaurentPoly.

    Keys of ``table`` are integer tuples (a_1..a_m); values are
    rational-regime Laurent polynomials in the ordinary variables (which
    may be none). The result is computed at every key of ``points``
    (default: all keys whose required shifts lie in the table).
    """
    m, n = a.m, a.n
    if m == 0:
        raise ValueError("no hatted pairs")
    shifts = {ye[n:] for _, ye in a.terms}
    if points is None:
        points = [k for k in table if all(tuple(u + v for u, v in zip(k, s)) in table for s in shifts)]
        if not points:
            raise WindowUnderflow("every point of the window")
    sample = next(iter(table.values()))
    vars_ = sample.vars
    out = {}
    for pt in points:
        acc = LaurentPoly.zero(vars_, RATIONAL)
        for (xe, ye), c in a.terms.items():
            src = tuple(u + v for u, v in zip(pt, ye[n:]))
            if src not in table:
                raise WindowUnderflow(src)
            f = table[src]
            # ordinary y_i: x_i -> q x_i
            for i in range(n):
                if ye[i]:
                    f = scale_substitute(f, vars_[i], QFrac.mono(ye[i]))
            # hatted x_j: multiply by q^(a_j * e)
            qe = sum(u * v for u, v in zip(xe[n:], pt))
            coeff = c.shift(qe)
            mono = LaurentPoly.monomial(vars_, xe[:n], coeff, RATIONAL) if n else LaurentPoly.constant(vars_, coeff, RATIONAL)
            acc = acc + mono * f
        out[pt] = acc
    return out


def homogenize(a: WeylElement, b: LaurentPoly) -> WeylElement:
    """(B(x) y - B(q x)) A for a one-pair operator A and B in the rational regime."""
    if a.n != 1 or a.m:
        raise ValueError("homogenize expects a one-pair operator")
    if b.is_zero():
        raise ValueError("B must be nonzero")
    bq = scale_substitute(b, b.vars[0], QFrac.mono(1))
    left = poly_to_weyl(b) * WeylElement.monomial((0,), (1,)) - poly_to_weyl(bq)
    return left * a


def poly_to_weyl(b: LaurentPoly) -> WeylElement:
    """A rational-regime polynomial in x as an x-only operator."""
    terms = {}
    for e, c in b.terms.items():
        if e[0] % 2:
            raise ValueError("half-integer exponent")
        terms[((e[0] // 2,), (0,))] = c
    return WeylElement(1, 0, terms)


def reparameterize(a: WeylElement, xscale=1, ysign: int = 1, pairs=None) -> WeylElement:
    """Substitute x_i -> c x_i and y_i -> s y_i on the chosen ordinary pairs."""
    if ysign not in (1, -1):
        raise ValueError("y sign must be +1 or -1")
    c = _qfrac(xscale)
    if c.is_zero():
        raise ValueError("x scale must be invertible")
    idx = range(a.n) if pairs is None else pairs
    out = {}
    for (xe, ye), v in a.terms.items():
        f = v
        for i in idx:
            if xe[i]:
                f = f * c ** xe[i]
            if ye[i] % 2 and ysign < 0:
                f = -f
        out[(xe, ye)] = f
    return a.like(out)


def evaluate_at_root(a: WeylElement, r: int, conductor: int | None = None) -> dict:
    """{(xexp, yexp): CycNum} with q specialized to zeta_2r."""
    m = conductor or 2 * r
    return {k: c.eval_root(r, m) for k, c in a.terms.items()}


def at_q_equals_one(a: WeylElement) -> dict[tuple, Fraction]:
    """Commutative image at q = 1: {(xexp, yexp): rational}."""
    out = {}
    for (xe, ye), c in a.terms.items():
        v = c.eval_at_one()
        if v:
            out[(xe, ye)] = out.get((xe, ye), Fraction(0)) + v
    return {k: v for k, v in out.items() if v}

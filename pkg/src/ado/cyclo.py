"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored as an integer coefficient vector in the power basis
1, z, ..., z^(phi(m)-1) together with a positive common denominator.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

from ._linalg import solve_field


def totient(m: int) -> int:
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pdivexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (den monic)."""
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dn]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num[:dn]), "non-exact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def _cyclo_tuple(m: int) -> tuple[int, ...]:
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _pdivexact(num, list(_cyclo_tuple(d)))
    return tuple(num)


def cyclotomic_polynomial(m: int) -> list[int]:
    """Coefficients (constant term first) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("conductor must be positive")
    return list(_cyclo_tuple(m))


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Rows z^k mod Phi_m for k = 0 .. 2*phi(m)-2 (and up to m-1)."""
    phi = totient(m)
    cp = _cyclo_tuple(m)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for k in range(max(2 * phi - 1, m)):
        rows.append(tuple(cur))
        # multiply by z and reduce
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * cp[j]
    return tuple(rows)


class CycNum:
    """Element of Q(zeta_m), immutable."""

    __slots__ = ("conductor", "_num", "_den", "_hash")

    def __init__(self, conductor: int, coeffs, den: int = 1, _normalized: bool = False):
        self.conductor = conductor
        if _normalized:
            self._num = coeffs
            self._den = den
        else:
            phi = totient(conductor)
            if len(coeffs) != phi:
                raise ValueError(f"expected {phi} coefficients, got {len(coeffs)}")
            fr = [Fraction(c) for c in coeffs]
            d = 1
            for c in fr:
                d = d * c.denominator // gcd(d, c.denominator)
            nums = tuple(int(c * d) for c in fr)
            self._num, self._den = _normalize(nums, d * den)
        self._hash = None

    # -- constructors
    @classmethod
    def _raw(cls, m: int, num: tuple[int, ...], den: int = 1) -> "CycNum":
        num, den = _normalize(num, den)
        return cls(m, num, den, _normalized=True)

    @classmethod
    def from_int(cls, m: int, v) -> "CycNum":
        v = Fraction(v)
        phi = totient(m)
        return cls._raw(m, (v.numerator,) + (0,) * (phi - 1), v.denominator)

    @classmethod
    def zero(cls, m: int) -> "CycNum":
        return cls.from_int(m, 0)

    @classmethod
    def one(cls, m: int) -> "CycNum":
        return cls.from_int(m, 1)

    @classmethod
    def from_poly(cls, m: int, poly: dict[int, int] | list[int]) -> "CycNum":
        """Reduce sum c_k z^k (k any integer) modulo Phi_m."""
        phi = totient(m)
        table = _reduction_table(m)
        acc = [0] * phi
        items = poly.items() if isinstance(poly, dict) else enumerate(poly)
        for k, c in items:
            if not c:
                continue
            row = table[k % m]
            for j in range(phi):
                if row[j]:
                    acc[j] += c * row[j]
        return cls._raw(m, tuple(acc))

    # -- accessors
    @property
    def coeffs(self) -> list[Fraction]:
        return [Fraction(c, self._den) for c in self._num]

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic
    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.conductor != self.conductor:
                raise ValueError(
                    f"conductor mismatch {self.conductor} vs {other.conductor}; embed first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_int(self.conductor, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._den == o._den:
            return CycNum._raw(self.conductor, tuple(a + b for a, b in zip(self._num, o._num)), self._den)
        return CycNum._raw(
            self.conductor,
            tuple(a * o._den + b * self._den for a, b in zip(self._num, o._num)),
            self._den * o._den,
        )

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.conductor, tuple(-a for a in self._num), self._den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycNum._raw(self.conductor, tuple(a * f.numerator for a in self._num), self._den * f.denominator)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        m = self.conductor
        phi = len(self._num)
        prod = _pmul(list(self._num), list(o._num))
        table = _reduction_table(m)
        acc = prod[:phi] + [0] * (phi - len(prod[:phi]))
        for k in range(phi, len(prod)):
            c = prod[k]
            if c:
                row = table[k]
                for j in range(phi):
                    if row[j]:
                        acc[j] += c * row[j]
        return CycNum._raw(m, tuple(acc), self._den * o._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(zeta)")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * invert(o)

    def __rtruediv__(self, other):
        return invert(self) * other

    def __pow__(self, e: int):
        if e < 0:
            return invert(self) ** (-e)
        result = CycNum.one(self.conductor)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_int(self.conductor, other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.conductor == other.conductor and self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.conductor, self._num, self._den))
        return self._hash

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(c * z**k for k, c in enumerate(self._num)) / self._den

    def galois(self, j: int) -> "CycNum":
        """Apply the automorphism zeta -> zeta^j (gcd(j, m) = 1)."""
        if gcd(j, self.conductor) != 1:
            raise ValueError("exponent must be a unit mod the conductor")
        poly = {k * j: c for k, c in enumerate(self._num) if c}
        out = CycNum.from_poly(self.conductor, poly)
        return CycNum._raw(self.conductor, out._num, self._den)

    def __repr__(self) -> str:
        return f"CycNum({self.conductor}, {self.to_str()})"

    def to_str(self, var: str = "z") -> str:
        parts = []
        for k, c in enumerate(self._num):
            if not c:
                continue
            f = Fraction(c, self._den)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and abs(f) == 1:
                s = ("-" if f < 0 else "+") + mono
            elif mono:
                s = f"{'+' if f > 0 else ''}{f}*{mono}"
            else:
                s = f"{'+' if f > 0 else ''}{f}"
            parts.append(s)
        if not parts:
            return "0"
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out

    # -- JSON
    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [_frac_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, d: dict) -> "CycNum":
        return cls(int(d["conductor"]), [Fraction(s) for s in d["coeffs"]])


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _normalize(num: tuple[int, ...], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num, den = tuple(-a for a in num), -den
    if den == 1:
        return tuple(num), 1
    g = den
    for a in num:
        if a:
            g = gcd(g, a)
            if g == 1:
                return tuple(num), den
    if not any(num):
        return tuple(num), 1
    return tuple(a // g for a in num), den // g


def root_power(m: int, e: int) -> CycNum:
    """zeta_m ** e."""
    return CycNum.from_poly(m, {e % m: 1})


def invert(a: CycNum) -> CycNum:
    """Multiplicative inverse by solving the multiplication-by-a system."""
    if a.is_zero():
        raise ZeroDivisionError("cannot invert zero in Q(zeta)")
    m = a.conductor
    phi = totient(m)
    if a.is_rational():
        return CycNum._raw(m, (a._den,) + (0,) * (phi - 1), a._num[0])
    # column k of the matrix is a * z^k
    cols = []
    for k in range(phi):
        cols.append((a * root_power(m, k)).coeffs)
    mat = [[cols[k][i] for k in range(phi)] for i in range(phi)]
    rhs = [Fraction(1)] + [Fraction(0)] * (phi - 1)
    sol = solve_field(mat, rhs, Fraction(0), Fraction(1))
    if sol is None:
        raise ZeroDivisionError("singular multiplication matrix")
    return CycNum(m, sol)


def embed(a: CycNum, m2: int) -> CycNum:
    """Image of a under zeta_m -> zeta_m2^(m2/m)."""
    m = a.conductor
    if m2 % m:
        raise ValueError(f"conductor {m} does not divide {m2}")
    step = m2 // m
    out = CycNum.from_poly(m2, {k * step: c for k, c in enumerate(a.numerators) if c})
    return CycNum._raw(m2, out.numerators, a.denominator)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)

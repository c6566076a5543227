"""Exact linear algebra over Q, over generic fields, and over Z/p."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np


def bareiss_rref(rows: list[list[int]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of an integer matrix.

    Forward elimination is fraction-free (Bareiss); only the final
    back-substitution divides, so intermediate growth stays polynomial.
    Returns (rref rows as Fractions, pivot columns).
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    prev = 1
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        sel = None
        for i in range(row, nrows):
            if m[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        m[row], m[sel] = m[sel], m[row]
        piv = m[row][col]
        prow = m[row]
        for i in range(row + 1, nrows):
            mi = m[i]
            f = mi[col]
            if f == 0:
                if prev != 1 or piv != 1:
                    m[i] = [(piv * v) // prev for v in mi]
                continue
            m[i] = [(piv * mi[j] - f * prow[j]) // prev for j in range(ncols)]
        prev = piv
        pivots.append(col)
        row += 1
    # back-substitution over Q
    rank = len(pivots)
    red = [[Fraction(v) for v in m[i]] for i in range(rank)]
    for i in range(rank - 1, -1, -1):
        c = pivots[i]
        inv = 1 / red[i][c]
        red[i] = [v * inv for v in red[i]]
        for k in range(i):
            f = red[k][c]
            if f:
                red[k] = [a - f * b for a, b in zip(red[k], red[i])]
    return red, pivots


def kernel_from_rref(red, pivots, ncols: int) -> list[list[Fraction]]:
    """Canonical kernel basis: one vector per free column, 1 at that column."""
    piv_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in piv_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    return basis


def rational_rows_to_int(rows) -> list[list[int]]:
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for r in rows:
        den = 1
        for v in r:
            d = Fraction(v).denominator
            den = den * d // gcd(den, d)
        out.append([int(Fraction(v) * den) for v in r])
    return out


def solve_field(a, b, zero, one):
    """Solve a·x = b over an exact field; entries support + - * / and ==.

    Returns one solution (free variables set to zero) or None if
    inconsistent.
    """
    n = len(a)
    ncols = len(a[0]) if n else 0
    m = [list(a[i]) + [b[i]] for i in range(n)]
    pivots = []
    row = 0
    for col in range(ncols):
        sel = None
        for i in range(row, n):
            if m[i][col] != zero:
                sel = i
                break
        if sel is None:
            continue
        m[row], m[sel] = m[sel], m[row]
        inv = one / m[row][col]
        m[row] = [v * inv for v in m[row]]
        for i in range(n):
            if i != row and m[i][col] != zero:
                f = m[i][col]
                m[i] = [u - f * v for u, v in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    for i in range(row, n):
        if m[i][ncols] != zero:
            return None
    x = [zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols]
    return x


# ---------------------------------------------------------------- mod p

def rref_mod_p(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """RREF of an int64 matrix over Z/p, p < 2**31, vectorized row ops."""
    m = np.array(mat, dtype=np.int64) % p
    nrows, ncols = m.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(m[row:, col])[0]
        if nz.size == 0:
            continue
        sel = row + int(nz[0])
        if sel != row:
            m[[row, sel]] = m[[sel, row]]
        inv = pow(int(m[row, col]), p - 2, p)
        m[row] = (m[row] * inv) % p
        f = m[:, col].copy()
        f[row] = 0
        idx = np.nonzero(f)[0]
        if idx.size:
            m[idx] = (m[idx] - (f[idx, None] * m[row][None, :]) % p) % p
        pivots.append(col)
        row += 1
    return m[:row], pivots


def rational_reconstruct(a: int, n: int) -> Fraction | None:
    """Find p/q ≡ a (mod n) with |p|, q below sqrt(n/2), or None."""
    a %= n
    if a == 0:
        return Fraction(0)
    bound = int((n // 2) ** 0.5)
    r0, r1 = n, a
    s0, s1 = 0, 1
    while r1 > bound:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        s0, s1 = s1, s0 - qt * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if gcd(r1, s1) != 1:
        return None
    return Fraction(r1, s1)


def crt_pair(a1: int, m1: int, a2: int, m2: int) -> tuple[int, int]:
    inv = pow(m1, -1, m2)
    t = ((a2 - a1) * inv) % m2
    return a1 + m1 * t, m1 * m2


def symmetric_mod(a: int, m: int) -> int:
    a %= m
    return a - m if a > m // 2 else a


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_1_mod(m: int, count: int, below: int = 1 << 30) -> list[int]:
    """The `count` largest primes p < below with p ≡ 1 (mod m)."""
    out = []
    c = (below - 1) // m * m + 1
    while len(out) < count:
        if c < 3:
            raise ValueError("ran out of primes")
        if is_prime(c):
            out.append(c)
        c -= m
    return out


def interpolate_mod_p(xs: list[int], ys: list[int], p: int) -> list[int]:
    """Coefficients c_0..c_{n-1} of the polynomial through (xs, ys) over Z/p."""
    out = interpolate_mod_p_batch(xs, np.asarray(ys, dtype=np.int64)[:, None], p)
    return [int(v) for v in out[:, 0]]


def interpolate_mod_p_batch(xs, ys: np.ndarray, p: int) -> np.ndarray:
    """Batched interpolation: ys has shape (n, batch), one column per polynomial.

    Returns coefficients with shape (n, batch). Newton divided differences,
    then expansion into the monomial basis; p < 2**31.
    """
    xs = [int(x) % p for x in xs]
    n = len(xs)
    coef = np.array(ys, dtype=np.int64) % p
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            inv = pow((xs[i] - xs[i - j]) % p, p - 2, p)
            coef[i] = (coef[i] - coef[i - 1]) % p * inv % p
    poly = np.zeros_like(coef)
    poly[0] = coef[n - 1]
    for i in range(n - 2, -1, -1):
        # poly <- poly * (x - xs[i]) + coef[i]
        shifted = np.zeros_like(poly)
        shifted[1:] = poly[:-1]
        poly = (shifted - (xs[i] * poly) % p + coef[i][None, :] * (np.arange(n) == 0)[:, None]) % p
    return poly

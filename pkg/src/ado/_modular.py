"""Multi-modular evaluation of knot brackets at q = zeta_2r.

The bracket of a knot tangle is a Laurent polynomial in x with
coefficients in Z[zeta_2r]. Rather than carrying exact cyclotomic
polynomials through the state sum, we

1. plan the contraction once (label propagation, x-spans, coefficient
   size bounds, transition lists);
2. evaluate it numerically modulo word-sized primes p = 1 (mod 2r), at
   every embedding zeta -> g^j and at enough points x to interpolate;
3. interpolate in x and in the embedding, then CRT across primes.

The coefficient bound is rigorous (l1 norms propagate submultiplicatively),
so the reconstruction is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb, gcd

import numpy as np

from . import _kernels
from ._linalg import crt_pair, interpolate_mod_p_batch, primes_1_mod, symmetric_mod
from .cyclo import _reduction_table, totient

_MEM_BUDGET = 192 * 1024 * 1024  # bytes for one amplitude block
_PRIME_BITS = 30


@dataclass
class _LayerPlan:
    kind: str
    src: np.ndarray
    dst: np.ndarray
    wid: np.ndarray
    n_dst: int
    params: np.ndarray  # per weight id; shape depends on kind


@dataclass
class Plan:
    r: int
    layers: list[_LayerPlan]
    lo: int
    hi: int
    norm: float
    max_states: int
    transitions: int


def _encode(labels: np.ndarray, r: int) -> np.ndarray:
    key = np.zeros(labels.shape[0], dtype=np.int64)
    for j in range(labels.shape[1] - 1, -1, -1):
        key = key * r + labels[:, j]
    return key


def _decode(keys: np.ndarray, r: int, w: int) -> np.ndarray:
    out = np.empty((keys.shape[0], w), dtype=np.int64)
    k = keys.copy()
    for j in range(w):
        out[:, j] = k % r
        k //= r
    return out


def plan(program, r: int) -> Plan:
    """Symbolic pass: which states exist, which transitions, spans and bounds."""
    if r ** max(program.widths) >= 2**62:
        raise ValueError("label space too large for the modular engine")
    labels = np.zeros((1, 1), dtype=np.int64)
    lo = np.zeros(1, dtype=np.int64)
    hi = np.zeros(1, dtype=np.int64)
    nb = np.ones(1, dtype=np.float64)
    layers: list[_LayerPlan] = []
    max_states, total = 1, 0
    for layer in program.layers:
        kind, i = layer.kind, layer.pos - 1
        if kind == "id":
            continue
        n = labels.shape[0]
        if kind in ("cross+", "cross-"):
            left, right = labels[:, i], labels[:, i + 1]
            src_l, new_l, key_l = [], [], []
            for k in range(r):
                if kind == "cross+":
                    m = (left >= k) & (right + k <= r - 1)
                else:
                    m = (right >= k) & (left + k <= r - 1)
                s = np.flatnonzero(m)
                if s.size == 0:
                    continue
                nl = labels[s].copy()
                if kind == "cross+":
                    nl[:, i] = right[s] + k
                    nl[:, i + 1] = left[s] - k
                else:
                    nl[:, i] = right[s] - k
                    nl[:, i + 1] = left[s] + k
                src_l.append(s)
                new_l.append(nl)
                key_l.append((left[s] * r + right[s]) * r + k)
            src = np.concatenate(src_l)
            newlab = np.concatenate(new_l)
            wkeys, wid = np.unique(np.concatenate(key_l), return_inverse=True)
            params = np.stack([wkeys // (r * r), (wkeys // r) % r, wkeys % r], axis=1)
            a, b, k = params[:, 0], params[:, 1], params[:, 2]
            if kind == "cross+":
                # x-exponents k-a-b-2l, l<=k; l1 norm binom(b+k,k)*2^k
                wlo, whi = -a - b - k, k - a - b
                wnorm = np.array([comb(int(bb + kk), int(kk)) * 2.0**kk for bb, kk in zip(b, k)])
            else:
                # inputs (left, right) = (B, A)
                wlo, whi = a + b - k, a + b + k
                wnorm = np.array([comb(int(aa + kk), int(kk)) * 2.0**kk for aa, kk in zip(a, k)])
        elif kind in ("cup-coev", "cup-coev*"):
            t = np.arange(r, dtype=np.int64)
            src = np.repeat(np.arange(n, dtype=np.int64), r)
            tt = np.tile(t, n)
            newlab = np.concatenate(
                [labels[src, :i], tt[:, None], tt[:, None], labels[src, i:]], axis=1
            )
            wid = tt
            params = t[:, None]
            e = r - 1 if kind == "cup-coev*" else 0
            wlo = whi = np.full(r, e, dtype=np.int64)
            wnorm = np.ones(r)
        else:  # caps
            s = np.flatnonzero(labels[:, i] == labels[:, i + 1])
            src = s
            newlab = np.concatenate([labels[s, :i], labels[s, i + 2 :]], axis=1)
            wid = labels[s, i]
            params = np.arange(r, dtype=np.int64)[:, None]
            e = 1 - r if kind == "cap-ev*" else 0
            wlo = whi = np.full(r, e, dtype=np.int64)
            wnorm = np.ones(r)
        w_new = newlab.shape[1]
        if w_new == 0:
            keys = np.zeros(src.shape[0], dtype=np.int64)
        else:
            keys = _encode(newlab, r)
        ukeys, dst = np.unique(keys, return_inverse=True)
        dst = dst.astype(np.int64)
        nd = ukeys.shape[0]
        order = np.argsort(dst, kind="stable")
        src, dst, wid = src[order].astype(np.int64), dst[order], np.asarray(wid)[order].astype(np.int64)
        new_lo = np.full(nd, np.iinfo(np.int64).max, dtype=np.int64)
        new_hi = np.full(nd, np.iinfo(np.int64).min, dtype=np.int64)
        np.minimum.at(new_lo, dst, lo[src] + wlo[wid])
        np.maximum.at(new_hi, dst, hi[src] + whi[wid])
        new_nb = np.zeros(nd)
        np.add.at(new_nb, dst, nb[src] * wnorm[wid])
        layers.append(_LayerPlan(kind, src, dst, wid, nd, params))
        labels = _decode(ukeys, r, w_new) if w_new else np.zeros((nd, 0), dtype=np.int64)
        lo, hi, nb = new_lo, new_hi, new_nb * (1 + 1e-9)
        max_states = max(max_states, nd)
        total += src.shape[0]
    # top boundary: the single remaining strand must carry label 0
    final = np.flatnonzero(labels[:, 0] == 0) if labels.shape[1] == 1 else np.array([], dtype=np.int64)
    if final.size == 0:
        return Plan(r, layers, 0, -1, 0.0, max_states, total)
    f = int(final[0])
    # selector layer keeps only state f
    layers.append(
        _LayerPlan("select", np.array([f], dtype=np.int64), np.zeros(1, dtype=np.int64),
                   np.zeros(1, dtype=np.int64), 1, np.zeros((1, 1), dtype=np.int64))
    )
    return Plan(r, layers, int(lo[f]), int(hi[f]), float(nb[f]), max_states, total)


# ---------------------------------------------------------------- numeric pass

def _root_of_unity(p: int, m: int) -> int:
    """An element of exact multiplicative order m modulo p (m | p-1)."""
    factors = [d for d in range(2, m + 1) if m % d == 0 and all(d % e for e in range(2, d))]
    for h in range(2, p):
        g = pow(h, (p - 1) // m, p)
        if all(pow(g, m // f, p) != 1 for f in factors):
            return g
    raise ValueError("no primitive root found")


def _vec_pow(base: np.ndarray, e: int, p: int) -> np.ndarray:
    """Elementwise base**e mod p for int64 arrays (e >= 0)."""
    out = np.ones_like(base)
    b = base % p
    while e:
        if e & 1:
            out = out * b % p
        b = b * b % p
        e >>= 1
    return out


class _Columns:
    """Evaluation points of one chunk: per column an embedding and an x value."""

    def __init__(self, p: int, r: int, emb_idx: np.ndarray, xv: np.ndarray, gam: np.ndarray):
        self.p, self.r = p, r
        self.emb = emb_idx
        self.x = xv % p
        self.xinv = _vec_pow(self.x, p - 2, p)
        m = 2 * r
        # zeta power table: qpow[e, col] = gamma_col^e, e mod 2r
        gcol = gam[emb_idx]
        qp = np.empty((m, xv.shape[0]), dtype=np.int64)
        qp[0] = 1
        for e in range(1, m):
            qp[e] = qp[e - 1] * gcol % p
        self.qpow = qp
        self._xpow: dict[int, np.ndarray] = {}

    def q(self, e: np.ndarray | int) -> np.ndarray:
        return self.qpow[np.asarray(e) % (2 * self.r)]

    def xp(self, e: int) -> np.ndarray:
        if e not in self._xpow:
            self._xpow[e] = _vec_pow(self.x if e >= 0 else self.xinv, abs(e), self.p)
        return self._xpow[e]


def _gauss_binomials(cols: _Columns) -> np.ndarray:
    """gb[n, k, col] = [n choose k] in Q = q^2, n,k < r."""
    r, p = cols.r, cols.p
    ncol = cols.x.shape[0]
    gb = np.zeros((r, r, ncol), dtype=np.int64)
    gb[:, 0] = 1
    for n in range(1, r):
        for k in range(1, n + 1):
            gb[n, k] = (gb[n - 1, k - 1] + cols.q(2 * k) * gb[n - 1, k]) % p
    return gb


def _pochhammer_table(cols: _Columns, needed: set[tuple[int, int]]) -> dict:
    """P[a, k] = prod_{l<k} (1 - q^(2(a-1)-2l) x^-2) for the needed (a, k)."""
    p = cols.p
    xm2 = cols.xp(-2)
    out = {}
    by_a: dict[int, int] = {}
    for a, k in needed:
        by_a[a] = max(by_a.get(a, 0), k)
    for a, kmax in by_a.items():
        cur = np.ones_like(xm2)
        out[(a, 0)] = cur
        for l in range(kmax):
            cur = cur * ((1 - cols.q(2 * (a - 1) - 2 * l) * xm2) % p) % p
            out[(a, l + 1)] = cur
    return out


def _weight_table(lp: _LayerPlan, cols: _Columns, gb: np.ndarray) -> np.ndarray:
    p, r = cols.p, cols.r
    ncol = cols.x.shape[0]
    kind = lp.kind
    if kind in ("cup-coev", "cap-ev", "select"):
        return np.ones((lp.params.shape[0], ncol), dtype=np.int64)
    if kind in ("cup-coev*", "cap-ev*"):
        sgn = -1 if kind == "cup-coev*" else 1
        xe = cols.xp(sgn * (1 - r))
        tab = np.empty((r, ncol), dtype=np.int64)
        for t in range(r):
            tab[t] = cols.q(sgn * 2 * t * (r - 1)) * xe % p
        return tab
    params = lp.params
    if kind == "cross+":
        need = {(int(a), int(k)) for a, _, k in params}
    else:
        need = {(int(b), int(k)) for _, b, k in params}
    pk = _pochhammer_table(cols, need)
    tab = np.empty((params.shape[0], ncol), dtype=np.int64)
    for w, (left, right, k) in enumerate(params.tolist()):
        if kind == "cross+":
            a, b = left, right
            c, d = a - k, b + k
            qe = (c - a) * (a + b + 1) + 2 * c * d + k * (k + 1)
            v = cols.q(qe) * gb[b + k, k] % p
            v = v * cols.xp(k - d - c) % p * pk[(a, k)] % p
        else:
            A, B = right, left
            c = A - k
            qe = (c - A) * (A + B - 1) - 2 * A * B
            v = cols.q(qe) * gb[B + k, k] % p
            if k % 2:
                v = (p - v) % p
            v = v * cols.xp(k + B + A) % p * pk[(A, k)] % p
        tab[w] = v
    return tab


def _run_prime(pl: Plan, p: int, backend: str | None) -> np.ndarray:
    """Values x^-lo * bracket at every (embedding, point); shape (phi, P)."""
    r = pl.r
    m = 2 * r
    units = [j for j in range(1, m) if gcd(j, m) == 1]
    g = _root_of_unity(p, m)
    gam = np.array([pow(g, j, p) for j in units], dtype=np.int64)
    npts = pl.hi - pl.lo + 1
    xs = np.arange(2, 2 + npts, dtype=np.int64)
    phi = len(units)
    emb_all = np.repeat(np.arange(phi, dtype=np.int64), npts)
    x_all = np.tile(xs, phi)
    ncols = emb_all.shape[0]
    chunk = max(1, min(ncols, _MEM_BUDGET // (8 * max(pl.max_states, r * r))))
    result = np.empty(ncols, dtype=np.int64)
    for s in range(0, ncols, chunk):
        e = min(ncols, s + chunk)
        cols = _Columns(p, r, emb_all[s:e], x_all[s:e], gam)
        gb = _gauss_binomials(cols)
        amp = np.ones((1, e - s), dtype=np.int64)
        for lp in pl.layers:
            tab = _weight_table(lp, cols, gb)
            amp = _kernels.accumulate(amp, lp.src, lp.dst, lp.wid, tab, lp.n_dst, p, backend)
        result[s:e] = amp[0] * cols.xp(-pl.lo) % p
    return result.reshape(phi, npts), xs, gam


def coefficient_bound(pl: Plan) -> int:
    """Bound on |power-basis coefficient| of any x-coefficient of the bracket."""
    m = 2 * pl.r
    red = _reduction_table(m)
    rmax = max(abs(v) for row in red[:m] for v in row)
    return int(math.ceil(pl.norm)) * rmax + 1


def evaluate(program, r: int, backend: str | None = None, verify_prime: bool = True):
    """Bracket of a knot tangle as {x-exponent: power-basis integer tuple}."""
    pl = plan(program, r)
    if pl.hi < pl.lo:
        return {}, pl
    m = 2 * r
    phi = totient(m)
    bound = coefficient_bound(pl)
    need_bits = bound.bit_length() + 2
    nprimes = -(-need_bits // (_PRIME_BITS - 1)) + (1 if verify_prime else 0)
    primes = primes_1_mod(m, nprimes, below=1 << _PRIME_BITS)
    acc = None
    modulus = 1
    prev = None
    for idx, p in enumerate(primes):
        vals, xs, gam = _run_prime(pl, p, backend)
        # interpolate in x: coeffs[e, emb]
        cx = interpolate_mod_p_batch(xs.tolist(), vals.T, p)
        # interpolate over embeddings: coeffs[k, e]
        ck = interpolate_mod_p_batch(gam.tolist(), cx.T, p)
        ck = ck.astype(object)
        if acc is None:
            acc, modulus = ck, p
        else:
            acc = np.vectorize(lambda a, b: crt_pair(int(a), modulus, int(b), p)[0], otypes=[object])(acc, ck)
            modulus *= p
        if verify_prime and idx == nprimes - 2:
            prev = np.vectorize(lambda a: symmetric_mod(int(a), modulus), otypes=[object])(acc)
    final = np.vectorize(lambda a: symmetric_mod(int(a), modulus), otypes=[object])(acc)
    if verify_prime and prev is not None and not np.array_equal(prev, final):
        raise AssertionError("modular reconstruction unstable across primes")
    out = {}
    for e in range(final.shape[1]):
        vec = tuple(int(v) for v in final[:, e])
        if any(vec):
            out[pl.lo + e] = vec
    assert final.shape[0] == phi
    return out, pl


def work_units(program, r: int) -> tuple[int, Plan]:
    """transitions x evaluation columns x primes; proportional to run time."""
    pl = plan(program, r)
    bound = coefficient_bound(pl)
    nprimes = -(-(bound.bit_length() + 2) // (_PRIME_BITS - 1)) + 1
    return pl.transitions * totient(2 * r) * max(pl.hi - pl.lo + 1, 1) * nprimes, pl

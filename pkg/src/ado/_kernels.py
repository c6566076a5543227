"""Hot loop of the modular state sum: out[dst[t]] += amp[src[t]] * W[wid[t]] (mod p).

Two interchangeable implementations:

* numba: explicit loops, parallel over destination states;
* numpy: gather, multiply, segment-sum with reduceat.

Set ADO_DISABLE_JIT=1 (or NUMBA_DISABLE_JIT=1) to force the numpy path.
ADO_THREADS sets the numba thread count.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("ADO_DISABLE_JIT", "") not in ("", "0") or os.environ.get(
    "NUMBA_DISABLE_JIT", ""
) not in ("", "0")

try:
    if _FORCE_NUMPY:
        raise ImportError
    import numba

    if "NUMBA_THREADING_LAYER" not in os.environ:
        # probing TBB first warns on older TBB installs; it stays as a fallback
        numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via env flag in tests
    numba = None
    HAVE_NUMBA = False


def thread_count() -> int:
    v = os.environ.get("ADO_THREADS")
    if v:
        try:
            return max(1, int(v))
        except ValueError:
            raise ValueError(f"ADO_THREADS must be a positive integer, got {v!r}") from None
    return 1


def accumulate_numpy(amp, src, dst, wid, table, n_dst: int, p: int) -> np.ndarray:
    """Reference implementation; src/dst/wid are int64 arrays sorted by dst."""
    ncols = amp.shape[1]
    out = np.zeros((n_dst, ncols), dtype=np.int64)
    if src.size == 0:
        return out
    # each product < p^2 < 2^60; reduce before summing
    block = max(1, (1 << 22) // max(ncols, 1))
    for s in range(0, src.size, block):
        e = min(src.size, s + block)
        prod = (amp[src[s:e]] * table[wid[s:e]]) % p
        d = dst[s:e]
        starts = np.flatnonzero(np.r_[True, d[1:] != d[:-1]])
        sums = np.add.reduceat(prod, starts, axis=0) % p
        out[d[starts]] = (out[d[starts]] + sums) % p
    return out


if HAVE_NUMBA:

    @numba.njit(parallel=True, cache=True)
    def _accumulate_jit(amp, src, dst, wid, table, n_dst, p):  # pragma: no cover - compiled
        ncols = amp.shape[1]
        out = np.zeros((n_dst, ncols), dtype=np.int64)
        nt = src.shape[0]
        # CSR row pointers over the dst-sorted transitions
        ptr = np.zeros(n_dst + 1, dtype=np.int64)
        for t in range(nt):
            ptr[dst[t] + 1] += 1
        for d in range(n_dst):
            ptr[d + 1] += ptr[d]
        for d in numba.prange(n_dst):
            row = out[d]
            # p < 2^30: seven products fit in int64 before reducing
            pending = 0
            for t in range(ptr[d], ptr[d + 1]):
                a = amp[src[t]]
                w = table[wid[t]]
                for col in range(ncols):
                    row[col] += a[col] * w[col]
                pending += 1
                if pending == 6:
                    for col in range(ncols):
                        row[col] %= p
                    pending = 0
            for col in range(ncols):
                row[col] %= p
        return out


def accumulate(amp, src, dst, wid, table, n_dst: int, p: int, backend: str | None = None) -> np.ndarray:
    """Dispatch to the numba kernel when available, else numpy."""
    b = backend or default_backend()
    if b == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable or disabled")
        numba.set_num_threads(min(thread_count(), numba.config.NUMBA_NUM_THREADS))
        return _accumulate_jit(amp, src, dst, wid, table, n_dst, p)
    return accumulate_numpy(amp, src, dst, wid, table, n_dst, p)


def default_backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"

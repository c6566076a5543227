"""Compare the numba and numpy accumulation kernels.

Runs the raw kernel on synthetic transitions and the full modular state
sum for a few (knot, r) pairs, checks that both backends agree, and
prints a JSON report.

    python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import json
import time

import numpy as np

from ado import _kernels
from ado.statesum import evaluate_bracket
from ado.tangle import builtin


def synthetic(n_src, n_dst, n_trans, ncols, nweights, seed=0):
    rng = np.random.default_rng(seed)
    p = 1073741789  # prime below 2^30
    amp = rng.integers(0, p, size=(n_src, ncols), dtype=np.int64)
    table = rng.integers(0, p, size=(nweights, ncols), dtype=np.int64)
    src = rng.integers(0, n_src, size=n_trans, dtype=np.int64)
    dst = np.sort(rng.integers(0, n_dst, size=n_trans, dtype=np.int64))
    wid = rng.integers(0, nweights, size=n_trans, dtype=np.int64)
    return amp, src, dst, wid, table, n_dst, p


def best_of(fn, repeat=3):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    report = {"threads": _kernels.thread_count(), "kernel": [], "statesum": []}

    sizes = [(2000, 2000, 20000, 64)] if args.quick else [(2000, 2000, 20000, 64), (50000, 50000, 400000, 32)]
    for n_src, n_dst, n_trans, ncols in sizes:
        data = synthetic(n_src, n_dst, n_trans, ncols, 97)
        row = {"transitions": n_trans, "columns": ncols}
        results = {}
        for b in backends:
            _kernels.accumulate(*data, backend=b)  # warm up / compile
            row[f"{b}_seconds"], results[b] = best_of(lambda: _kernels.accumulate(*data, backend=b))
        row["agree"] = all(np.array_equal(results["numpy"], v) for v in results.values())
        report["kernel"].append(row)

    cases = [("3_1", 11), ("4_1", 10)] if args.quick else [("3_1", 11), ("5_2", 11), ("4_1", 16)]
    for knot, r in cases:
        prog = builtin(knot)
        row = {"knot": knot, "r": r}
        polys = {}
        for b in backends:
            evaluate_bracket(prog, 3, engine="modular", backend=b)
            row[f"{b}_seconds"], br = best_of(lambda: evaluate_bracket(prog, r, engine="modular", backend=b), 1)
            polys[b] = br.poly
        row["agree"] = all(v == polys["numpy"] for v in polys.values())
        report["statesum"].append(row)
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()

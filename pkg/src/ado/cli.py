"""Command line interface: ado compute | verify | guess | bench | tangle.

Exit codes: 0 success, 1 invalid input, 2 internal assertion,
3 failed certificate, 4 empty kernel.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from pathlib import Path

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_CERT, EXIT_EMPTY = 0, 1, 2, 3, 4

DEFAULT_R = "2..11"
DEFAULT_N = "2..15"
DEFAULT_SEED = 20240229


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def parse_range(text: str, lo_min: int | None = None) -> list[int]:
    """'a..b' (inclusive) or a single integer."""
    text = text.strip()
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise InputError(f"bad range {text!r}; expected a..b") from None
    if hi < lo:
        raise InputError(f"empty range {text!r}")
    if lo_min is not None and lo < lo_min:
        raise InputError(f"range {text!r} must start at {lo_min} or above")
    return list(range(lo, hi + 1))


def _load_program(args):
    from .tangle import builtin, parse, validate

    if getattr(args, "tangle", None):
        path = Path(args.tangle)
        if not path.exists():
            raise InputError(f"no such file: {path}")
        return validate(parse(path.read_text()))
    try:
        return builtin(args.knot)
    except KeyError as e:
        raise InputError(str(e.args[0])) from None


def _emit(args, payload, text: str | None = None):
    fmt = getattr(args, "format", "json")
    if fmt == "json" or text is None:
        out = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    else:
        out = text
    if getattr(args, "output", None):
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def _apply_threads(args):
    if getattr(args, "threads", None):
        os.environ["ADO_THREADS"] = str(args.threads)


# ---------------------------------------------------------------- compute

def cmd_compute(args) -> int:
    from .jones import jones_family
    from .latex import hat_table
    from .statesum import ado_invariant

    _apply_threads(args)
    prog = _load_program(args)
    payload: dict = {"knot": prog.name}
    text = ""
    if args.what in ("ado", "both"):
        rs = parse_range(args.r, 2)
        results = {r: ado_invariant(prog, r, engine=args.engine, backend=args.backend) for r in rs}
        payload["ado"] = [res.to_json() for res in results.values()]
        if args.format == "latex":
            text += hat_table(prog.name, {r: res.hat for r, res in results.items()})
        else:
            text += "".join(f"r={r}: {res.hat.to_str()}\n" for r, res in results.items())
    if args.what in ("jones", "both"):
        Ns = parse_range(args.N, 0)
        fam = jones_family(prog.name if not args.tangle else args.knot, Ns)
        payload["jones"] = fam.to_json()
        text += "".join(f"J_{N} = {v.to_str()}\n" for N, v in fam.values.items())
    _emit(args, payload, text)
    return EXIT_OK


# ---------------------------------------------------------------- verify

def _knots(args):
    from .recursion import RECURSION_KNOTS

    if args.knot == "all":
        return list(RECURSION_KNOTS)
    if args.knot not in RECURSION_KNOTS:
        raise InputError(f"no recursion data for {args.knot!r}; choose from {', '.join(RECURSION_KNOTS)} or all")
    return [args.knot]


def _load_operator(path: str):
    from .qweyl import WeylElement

    p = Path(path)
    if not p.exists():
        raise InputError(f"no such file: {p}")
    data = json.loads(p.read_text())
    if "candidates" in data:
        if not data["candidates"]:
            raise InputError(f"{p} holds no candidate operators")
        data = data["candidates"][0]
    from .schemas import validate

    try:
        validate(data, "operator")
    except Exception as e:
        raise InputError(f"{p}: not an operator: {e}") from None
    return WeylElement.from_json(data)


def cmd_verify(args) -> int:
    from . import recursion as rec

    _apply_threads(args)
    certs = []
    what = args.what
    if what == "recursion":
        for k in _knots(args):
            certs.append(rec.verify_jones(k, parse_range(args.N, 1), literal=args.literal))
            certs.append(rec.verify_ado(k, parse_range(args.r, 2), literal=args.literal))
    elif what == "residue":
        for k in _knots(args):
            for r in parse_range(args.r, 2):
                for N in range(1, 2 * r + 1):
                    if N % r:
                        certs.append(rec.residue_check(k, r, N))
    elif what == "kashaev":
        for k in _knots(args):
            for r in parse_range(args.r, 2):
                certs.append(rec.kashaev_check(k, r))
    elif what == "aj":
        if args.knot not in ("4_1", "all"):
            raise InputError("the A-polynomial is built in for 4_1 only")
        op = rec.builtin_operators("4_1", literal=args.literal).homogeneous()
        certs.append(rec.q1_divisibility(op, rec.figure_eight_apoly(), rec.figure_eight_aj_factor()))
    elif what == "jones-crosscheck":
        for k in _knots(args):
            if args.operator:
                op = _load_operator(args.operator)
            else:
                op = rec.builtin_operators(k).homogeneous()
            certs.append(rec.thm_jones_crosscheck(op, k, parse_range(args.N, 1)))
    elif what == "annihilators":
        from .battery import run_battery

        for name, res in run_battery().items():
            c = rec.Certificate(f"annihilator:{name}", {"window": "width >= 8"}, details={"operators": res})
            if not all(res.values()):
                c.fail(residual=[op for op, ok in res.items() if not ok])
            certs.append(c)
    status = "pass" if all(c.passed for c in certs) else "fail"
    payload = {"command": f"verify {what}", "status": status, "certificates": [c.to_json() for c in certs]}
    text = "".join(f"{c.status.upper():4}  {c.identity}  {json.dumps(c.range)}\n" for c in certs)
    _emit(args, payload, text)
    return EXIT_OK if status == "pass" else EXIT_CERT


# ---------------------------------------------------------------- guess

def cmd_guess(args) -> int:
    from .recursion import Ansatz, ado_hat, builtin_operators, guess_operator, proportional

    _apply_threads(args)
    train, test = parse_range(args.train, 2), parse_range(args.test, 2)
    ans = Ansatz(args.y_order, args.x_deg, args.q_deg)
    if min(ans.y_order, ans.x_degree, ans.q_degree) < 0:
        raise InputError("ansatz bounds must be nonnegative")
    if set(train) & set(test):
        raise InputError("train and test ranges overlap")
    fam = {r: ado_hat(args.knot, r).hat for r in train + test}
    res = guess_operator(fam, ans, train, test, seed=args.seed)
    payload = {
        "knot": args.knot,
        "certificate": res.certificate.to_json(),
        "candidates": [c.to_json() for c in res.candidates],
        "kernel_dimension": res.kernel_dimension,
    }
    try:
        ref = builtin_operators(args.knot).homogeneous()
        payload["proportional_to_builtin"] = [proportional(c, ref) for c in res.candidates]
    except KeyError:
        pass
    text = "".join(c.to_str() + "\n" for c in res.candidates)
    _emit(args, payload, text)
    if res.kernel_dimension == 0:
        print("empty kernel: enlarge the ansatz (--y-order, --x-deg, --q-deg)", file=sys.stderr)
        return EXIT_EMPTY
    return EXIT_OK if res.candidates else EXIT_CERT


# ---------------------------------------------------------------- bench

def cmd_bench(args) -> int:
    from . import _kernels
    from ._modular import work_units
    from .statesum import evaluate_bracket

    _apply_threads(args)
    prog = _load_program(args)
    rs = parse_range(args.r, 2)
    backends = ["numba", "numpy"] if args.backend == "both" else [args.backend or _kernels.default_backend()]
    if "numba" in backends and not _kernels.HAVE_NUMBA:
        backends.remove("numba")
    # calibrate seconds per work unit on a small run
    calib_prog = _load_program(argparse.Namespace(knot="4_1", tangle=None))
    evaluate_bracket(calib_prog, 6, engine="modular", backend=backends[0])
    t = time.perf_counter()
    evaluate_bracket(calib_prog, 10, engine="modular", backend=backends[0])
    rate = (time.perf_counter() - t) / work_units(calib_prog, 10)[0]
    rows = []
    for r in rs:
        units, pl = work_units(prog, r)
        est = units * rate
        row = {"knot": prog.name, "r": r, "transitions": pl.transitions, "estimated_seconds": round(est, 3)}
        if est > args.budget and not args.force:
            row["skipped"] = f"estimate exceeds --budget {args.budget}s; pass --force to run"
            rows.append(row)
            continue
        for b in backends:
            t = time.perf_counter()
            br = evaluate_bracket(prog, r, engine="modular", backend=b)
            row[f"{b}_seconds"] = round(time.perf_counter() - t, 4)
            row.setdefault("terms", len(br.poly.terms))
        rows.append(row)
    payload = {"threads": _kernels.thread_count(), "backends": backends, "timings": rows}
    text = "".join(json.dumps(r) + "\n" for r in rows)
    _emit(args, payload, text)
    return EXIT_OK


# ---------------------------------------------------------------- tangle

def cmd_tangle(args) -> int:
    from .tangle import closed_loops, crossing_count, linking_data, parse, validate

    path = Path(args.file)
    if not path.exists():
        raise InputError(f"no such file: {path}")
    prog = validate(parse(path.read_text()))
    if args.what == "check":
        payload = {"file": str(path), "valid": True}
    else:
        payload = {
            "name": prog.name,
            "layers": len(prog.layers),
            "crossings": crossing_count(prog),
            "components": prog.n_components,
            "arcs": prog.n_arcs,
            "closed_loops": closed_loops(prog),
            **linking_data(prog).to_json(),
        }
    _emit(args, payload, json.dumps(payload) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ado", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized steps")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, knot_default="3_1"):
        sp.add_argument("--knot", default=knot_default)
        sp.add_argument("--format", choices=("json", "latex", "text"), default="json")
        sp.add_argument("--output", help="write to this file instead of stdout")
        sp.add_argument("--threads", type=int, help="overrides ADO_THREADS")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)

    c = sub.add_parser("compute", help="ADO (hat) invariants and colored Jones polynomials")
    common(c)
    c.add_argument("--tangle", help="path to a .tng tangle program")
    c.add_argument("--r", default=DEFAULT_R)
    c.add_argument("--N", default=DEFAULT_N)
    c.add_argument("--what", choices=("ado", "jones", "both"), default="ado")
    c.add_argument("--engine", choices=("auto", "modular", "reference"), default="auto")
    c.add_argument("--backend", choices=("numba", "numpy"))
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="exact certificates")
    v.add_argument("what", choices=("recursion", "residue", "kashaev", "aj", "jones-crosscheck", "annihilators"))
    common(v, knot_default="all")
    v.add_argument("--r", default=None)
    v.add_argument("--N", default=DEFAULT_N)
    v.add_argument("--operator", help="operator JSON (or guess output) for jones-crosscheck")
    v.add_argument("--literal", action="store_true", help="use the operators exactly as printed")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("guess", help="find annihilators of the hat family")
    common(g)
    g.add_argument("--y-order", type=int, default=2)
    g.add_argument("--x-deg", type=int, default=11)
    g.add_argument("--q-deg", type=int, default=20)
    g.add_argument("--train", default="2..9")
    g.add_argument("--test", default="10..12")
    g.set_defaults(func=cmd_guess)

    b = sub.add_parser("bench", help="state-sum timings")
    common(b)
    b.add_argument("--tangle")
    b.add_argument("--r", default=DEFAULT_R)
    b.add_argument("--backend", choices=("numba", "numpy", "both"), default="both")
    b.add_argument("--budget", type=float, default=120.0, help="skip runs estimated above this many seconds")
    b.add_argument("--force", action="store_true")
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("tangle", help="inspect tangle programs")
    t.add_argument("what", choices=("check", "info"))
    t.add_argument("file")
    t.add_argument("--format", choices=("json",), default="json")
    t.add_argument("--output")
    t.set_defaults(func=cmd_tangle)
    return p


def _default_r(args):
    if getattr(args, "r", "") is None:
        args.r = {"residue": "2..8", "kashaev": "2..10"}.get(getattr(args, "what", ""), DEFAULT_R)


def main(argv=None) -> int:
    from .poly import EvaluationPoleError, InexactDivision
    from .qweyl import WindowUnderflow
    from .tangle import TangleSyntaxError, TangleValidationError

    parser = build_parser()
    args = parser.parse_args(argv)
    _default_r(args)
    random.seed(args.seed)
    try:
        return args.func(args)
    except (InputError, TangleSyntaxError, TangleValidationError, WindowUnderflow, KeyError) as e:
        print(f"ado: invalid input: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (AssertionError, InexactDivision, EvaluationPoleError) as e:
        print(f"ado: internal assertion failed: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

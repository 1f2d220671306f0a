"""Command line front end: ``tfop <subcommand> [options]``.

Exit codes: 0 success, 1 input or numerical error, 2 Riesz (U / Gamma) failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path


from . import serialize as ser
from .core import TFLattice, TFOpError, dual_window, frame_bounds, gauss_window
from .experiments import (
    RNG_NAME,
    ROW_COLUMNS,
    build_points,
    parse_shifts,
    random_operator,
    run_sweep,
    spreading_summary,
)
from .gm import RieszError, u_bounds
from .mgm import gamma_field, gamma_summary, shifted_windows
from .spread import kernel_from_spreading, spreading_from_kernel
from .tst import tst_operator, tst_to_gm_sum


class RieszFailure(Exception):
    def __init__(self, failures):
        super().__init__("Riesz condition failed")
        self.failures = failures


def _lattice(text, N):
    try:
        a, b = (int(v) for v in text.lower().split("x"))
    except ValueError as exc:
        raise TFOpError(f"bad lattice {text!r}; expected AxB, e.g. 4x4") from exc
    return TFLattice(N, a, b)


def _widths(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise TFOpError(f"bad width list {text!r}") from exc


def _emit(args, obj, csv_text=None):
    if args.format == "csv":
        if csv_text is None:
            raise TFOpError(f"{args.command} has no CSV output; use --format json")
        text = csv_text
    else:
        text = ser.dumps(obj)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_operator(args):
    if args.op:
        obj = ser.load_json(args.op)
        return ser.obj_to_array(obj.get("kernel", obj))
    params = {"lags": args.lags, "dopplers": args.dopplers, "taps": args.taps, "noise": args.noise}
    return random_operator(args.kind, args.n, args.seed, **params)


def _meta(args, **extra):
    return {"seed": args.seed, "rng": RNG_NAME, "command": args.command, **extra}


# -- subcommands ----------------------------------------------------------------------


def cmd_spreading(args):
    K = ser.obj_to_array(ser.load_json(args.input))
    if K.ndim != 2:
        raise TFOpError("input is not a square kernel")
    eta = spreading_from_kernel(K)
    obj = ser.array_to_obj(eta)
    obj["summary"] = spreading_summary(eta)
    _emit(args, obj, ser.array_to_csv(eta))


def cmd_kernel(args):
    eta = ser.obj_to_array(ser.load_json(args.input))
    if eta.ndim != 2:
        raise TFOpError("input is not a square spreading function")
    K = kernel_from_spreading(eta)
    _emit(args, ser.array_to_obj(K), ser.array_to_csv(K))


def cmd_random_op(args):
    params = {"lags": args.lags, "dopplers": args.dopplers, "taps": args.taps, "noise": args.noise}
    K = random_operator(args.kind, args.n, args.seed, **params)
    obj = ser.array_to_obj(K)
    keep = ("lags", "dopplers") if args.kind == "rect" else ("taps", "noise")
    obj["meta"] = _meta(args, kind=args.kind, **{k: params[k] for k in keep})
    _emit(args, obj, ser.array_to_csv(K))


def _sweep(args, points):
    H = _load_operator(args)
    rows, failures = run_sweep(H, points, pinv=args.pinv, timing=args.timing)
    if failures:
        raise RieszFailure(failures)
    obj = {"meta": _meta(args, n=int(H.shape[0])), "rows": rows}
    _emit(args, obj, ser.rows_to_csv(rows, ROW_COLUMNS))


def cmd_approx_gm(args):
    N = args.n if not args.op else ser.obj_to_array(ser.load_json(args.op)).shape[0]
    lats = [_lattice(s, N) for s in args.lattice]
    _sweep(args, build_points(N, [(l.a, l.b) for l in lats], _widths(args.width)))


def cmd_approx_mgm(args):
    N = args.n if not args.op else ser.obj_to_array(ser.load_json(args.op)).shape[0]
    lats = [_lattice(s, N) for s in args.lattice]
    shifts = parse_shifts(args.shifts) if args.shifts else args.scheme
    _sweep(args, build_points(N, [(l.a, l.b) for l in lats], _widths(args.width), "mgm", shifts))


def cmd_tst_build(args):
    spec = ser.obj_to_tst(ser.load_json(args.spec), base=Path(args.spec).parent)
    K = tst_operator(spec)
    _emit(args, ser.array_to_obj(K), ser.array_to_csv(K))


def cmd_tst_reduce(args):
    spec = ser.obj_to_tst(ser.load_json(args.spec), base=Path(args.spec).parent)
    lat = _lattice(args.lattice, spec.N)
    g = gauss_window(spec.N, args.width)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        terms = tst_to_gm_sum(spec, g, g, lat, args.p, args.q, strict=args.strict_tst)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    obj = {
        "n": spec.N,
        "a": lat.a,
        "b": lat.b,
        "width": args.width,
        "residual": terms[0].residual,
        "terms": [
            {
                "coset": list(t.coset),
                "gamma": ser.array_to_obj(t.gamma),
                "mask": ser.mask_to_obj(t.mask, lat),
            }
            for t in terms
        ],
    }
    _emit(args, obj)


def cmd_frame_check(args):
    lat = _lattice(args.lattice, args.n)
    g = gauss_window(args.n, args.width)
    lo, hi = frame_bounds(g, lat)
    obj = {"lattice": str(lat), "width": args.width, "A": lo, "B": hi, "frame": bool(lo > 1e-10 * hi)}
    if obj["frame"]:
        obj["dual"] = ser.array_to_obj(dual_window(g, lat))
    _emit(args, obj)
    return 0 if obj["frame"] else 1


def cmd_riesz_check(args):
    lat = _lattice(args.lattice, args.n)
    g = gauss_window(args.n, args.width)
    if args.shifts:
        hs = shifted_windows(g, parse_shifts(args.shifts))
        summ = gamma_summary(gamma_field(g, hs, lat))
        ok = summ["min_eig"] > 1e-10 * summ["max_eig"]
        obj = {"lattice": str(lat), "width": args.width, "windows": len(hs), **summ, "riesz": bool(ok)}
    else:
        lo, hi = u_bounds(g, g, lat)
        ok = lo > 1e-10 * hi
        obj = {"lattice": str(lat), "width": args.width, "U_min": lo, "U_max": hi, "riesz": bool(ok)}
    _emit(args, obj)
    return 0 if ok else 2


# -- parser ------------------------------------------------------------------------------


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="seed of the PCG64 generator")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--pinv", action="store_true", help="zero-fill points where U vanishes instead of failing")
    p.add_argument("--strict-tst", dest="strict_tst", action="store_true",
                   help="refuse TST prototypes that are not of multiplier form")
    return p


def _op_source(p):
    p.add_argument("--op", help="kernel JSON file; if absent a random operator is generated")
    p.add_argument("--n", type=int, default=32)
    p.add_argument("--kind", choices=("rect", "perturbed-lti"), default="rect")
    p.add_argument("--lags", type=int, default=2, help="rect: support extent in lag")
    p.add_argument("--dopplers", type=int, default=8, help="rect: support extent in doppler")
    p.add_argument("--taps", type=int, default=12, help="perturbed-lti: impulse response length")
    p.add_argument("--noise", type=float, default=0.1, help="perturbed-lti: perturbation scale")
    p.add_argument("--width", default="1", help="comma separated window widths")
    p.add_argument("--timing", action="store_true", help="record runtime_ms (breaks byte identity)")


def build_parser():
    common = _common()
    ap = argparse.ArgumentParser(prog="tfop", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spreading", parents=[common], help="kernel JSON -> spreading function")
    p.add_argument("input")
    p.set_defaults(func=cmd_spreading)

    p = sub.add_parser("kernel", parents=[common], help="spreading JSON -> kernel")
    p.add_argument("input")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("random-op", parents=[common], help="random rect or perturbed-LTI operator")
    _op_source(p)
    p.set_defaults(func=cmd_random_op)

    p = sub.add_parser("approx-gm", parents=[common], help="best Gabor multiplier sweep")
    _op_source(p)
    p.add_argument("--lattice", action="append", required=True, help="AxB, repeatable")
    p.set_defaults(func=cmd_approx_gm)

    p = sub.add_parser("approx-mgm", parents=[common], help="best multiple Gabor multiplier sweep")
    _op_source(p)
    p.add_argument("--lattice", action="append", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--scheme", type=int, choices=(1, 2), default=1)
    g.add_argument("--shifts", help="explicit synthesis shifts b:nu,b:nu,...")
    p.set_defaults(func=cmd_approx_mgm)

    p = sub.add_parser("tst-build", parents=[common], help="kernel of a TST spec")
    p.add_argument("spec")
    p.set_defaults(func=cmd_tst_build)

    p = sub.add_parser("tst-reduce", parents=[common], help="TST spec -> sum of Gabor multipliers")
    p.add_argument("spec")
    p.add_argument("--lattice", required=True)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--width", type=float, default=1.0)
    p.set_defaults(func=cmd_tst_reduce)

    for name, fn, help_ in (("frame-check", cmd_frame_check, "Gabor frame bounds and dual window"),
                            ("riesz-check", cmd_riesz_check, "U / Gamma condition of a window setup")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--n", type=int, default=32)
        p.add_argument("--lattice", required=True)
        p.add_argument("--width", type=float, default=1.0)
        if name == "riesz-check":
            p.add_argument("--shifts")
        p.set_defaults(func=fn)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except RieszFailure as exc:
        json.dump({"error": "riesz", "failures": exc.failures}, sys.stderr, sort_keys=True)
        sys.stderr.write("\n")
        return 2
    except RieszError as exc:
        json.dump(exc.as_dict(), sys.stderr, sort_keys=True)
        sys.stderr.write("\n")
        return 2
    except TFOpError as exc:
        print(f"tfop {args.command}: {exc}", file=sys.stderr)
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())

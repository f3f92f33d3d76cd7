"""Command-line front end: ``convpow {analyze,power,attractor,compare,supnorm}``.

Exit codes: 0 success, 1 unexpected library error, 2 bad input,
3 hypothesis violation, 4 resource cap, 5 accuracy failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import homogeneous
from .attractors import AttractorSpec, attractor_imaginary, attractor_positive
from .errors import ConvpowError, InputError
from .lattice import LatticeFunction, PowerConfig, power
from .llt import llt_error_curve, supnorm_fit
from .spectrum import analyze

CSV_HELP = """CSV columns:
  compare: n, scaled_error (n^mu_phi * max window error), sup_error,
           supnorm (||phi^(n)||_inf), n_mu_supnorm, window_points
  supnorm: n, supnorm, n_mu_supnorm (when mu_phi is known)"""


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _load_function(path: str) -> LatticeFunction:
    return LatticeFunction.from_json_obj(_load_json(path))


def _n_list(text: str) -> list[int]:
    try:
        ns = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InputError(f"--n expects a comma-separated list of integers, got {text!r}") from exc
    if not ns or any(b <= a for a, b in zip(ns, ns[1:])):
        raise InputError("--n must be a strictly increasing list")
    return ns


def _window(text: str | None, dim: int):
    if text is None:
        return 3.0
    try:
        vals = [float(v) for v in text.replace("x", ",").split(",") if v.strip()]
    except ValueError as exc:
        raise InputError(f"--window expects numbers, got {text!r}") from exc
    if len(vals) == 2:
        return [vals] * dim
    if len(vals) == 2 * dim:
        return [vals[2 * k : 2 * k + 2] for k in range(dim)]
    raise InputError(f"--window needs 2 or {2 * dim} numbers (min,max per axis)")


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _config(args) -> PowerConfig:
    return PowerConfig(workers=args.threads)


def cmd_analyze(args) -> int:
    f = _load_function(args.input)
    res = analyze(f, grid_per_axis=args.grid, tol=args.tol if args.tol is not None else 1e-9)
    _emit(_dumps(res.to_json_obj()), args.output)
    return 0


def cmd_power(args) -> int:
    f = _load_function(args.input)
    ns = _n_list(args.n)
    if len(ns) != 1:
        raise InputError("power takes a single --n")
    p = power(f, ns[0], args.method, _config(args))
    _emit(_dumps(p.to_json_obj()), args.output)
    return 0


def cmd_attractor(args) -> int:
    req = _load_json(args.input)
    if not isinstance(req, dict):
        raise InputError("attractor request must be a JSON object")
    spec = AttractorSpec.from_json_obj(req)
    t = float(req.get("t", 1.0))
    tol = args.tol if args.tol is not None else float(req.get("tol", 1e-6))
    pts = req.get("points", [[0.0] * spec.dim])
    out = []
    for x in pts:
        x = [float(v) for v in np.atleast_1d(x)]
        if spec.kind == "positive":
            v, ok = attractor_positive(spec, t, x), True
        else:
            r = attractor_imaginary(spec, t, x, tol)
            v, ok = r.value, r.converged
        out.append({"x": x, "re": v.real, "im": v.imag, "converged": ok})
    _emit(_dumps(out), args.output)
    return 0


def cmd_compare(args) -> int:
    f = _load_function(args.input)
    ns = _n_list(args.n)
    a = analyze(f, grid_per_axis=args.grid)
    rep = llt_error_curve(a, _window(args.window, f.dim), ns, args.method, _config(args))
    _emit(rep.to_csv(), args.output)
    return 0


def cmd_supnorm(args) -> int:
    f = _load_function(args.input)
    ns = _n_list(args.n)
    mu = None
    try:
        mu = analyze(f, grid_per_axis=args.grid).mu_phi
    except ConvpowError:
        pass
    fit = supnorm_fit(f, ns, args.method, _config(args))
    _emit(fit.to_csv(mu), args.output)
    sys.stderr.write(f"slope {fit.slope:.6f}" + (f" (expected {-mu:.6f})" if mu is not None else "") + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="convpow",
        description="Convolution powers of finitely supported functions on Z^d.",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="JSON input file ('-' for stdin)")
    common.add_argument("--output", help="write here instead of stdout")
    common.add_argument("--seed", type=int, default=42, help="seed for sampled checks (default 42)")
    common.add_argument("--threads", type=int, default=None, help="FFT worker threads (default: all cores)")
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--grid", type=int, default=512, help="symbol grid points per axis")
    common.add_argument("--method", default="auto", choices=["auto", "direct", "fft", "fft_local"])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="maximizers and their classification (JSON)")
    sp = sub.add_parser("power", parents=[common], help="n-th convolution power (JSON)")
    sp.add_argument("--n", required=True)
    sub.add_parser("attractor", parents=[common], help="evaluate an attractor request (JSON)")
    sp = sub.add_parser("compare", parents=[common], help="scaled local-limit errors (CSV)")
    sp.add_argument("--n", required=True, help="comma-separated increasing list")
    sp.add_argument("--window", help="box K: 'min,max' for every axis or per-axis 'min,max,min,max' (use --window=-1,1)")
    sp = sub.add_parser("supnorm", parents=[common], help="sup-norm decay fit (CSV; slope on stderr)")
    sp.add_argument("--n", required=True)
    return p


COMMANDS = {
    "analyze": cmd_analyze,
    "power": cmd_power,
    "attractor": cmd_attractor,
    "compare": cmd_compare,
    "supnorm": cmd_supnorm,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.tol is not None and not args.tol > 0:
        print(f"convpow {args.command}: --tol must be positive", file=sys.stderr)
        return 2
    homogeneous.DEFAULT_SEED = args.seed
    try:
        return COMMANDS[args.command](args)
    except ConvpowError as exc:
        print(f"convpow {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

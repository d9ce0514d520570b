"""Command-line front end: ``stringzeta <command> [options]``.

Exit codes: 0 success, 2 usage error (bad arguments, invalid density spec,
unsupported request), 3 numerical failure (accuracy target missed,
inconsistent tail). Options may also come from ``--config FILE`` holding
``key = value`` lines named like the long flags; command-line flags win.

Sweep CSV columns: param, lower, upper, shanks, oracle, status.
lower/upper are the Euler bounds from the two highest orders, shanks is the
Shanks transform of the Waring estimates of the three highest orders, oracle
is the finite-difference E1. Missing values are empty cells.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import mpmath as mp

from . import extrapolate as ex
from . import fixtures
from .asymptotics import AsymptoticCoefficients, asym_coeffs
from .density import parse_density
from .diagrams import enumerate_diagrams
from .errors import (AccuracyError, CapabilityError, DataError, NumericalError,
                     StringZetaError, TailInconsistencyError)
from .greens import BC
from .oracle import solve_spectrum
from .sumrules import QuadratureConfig, SumRuleTable, sum_rules

SWEEP_COLUMNS = ("param", "lower", "upper", "shanks", "oracle", "status")
_METHODS = {"auto": "auto", "diagram": "diagram", "kernel": "kernel_trace",
            "kernel_trace": "kernel_trace", "closed": "closed_z1", "closed_z1": "closed_z1"}


class UsageError(Exception):
    pass


# -- argument helpers ------------------------------------------------------------------

def parse_orders(text: str) -> list:
    """'1..4', '3,4,5' or '1..3,7' -> sorted unique ints."""
    out = set()
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = part.split("..")
                out.update(range(int(lo), int(hi) + 1))
            else:
                out.add(int(part))
        except ValueError:
            raise UsageError(f"bad order list {text!r}") from None
    if not out or min(out) < 1:
        raise UsageError(f"orders must be positive integers: {text!r}")
    return sorted(out)


def _read_config(path: str) -> dict:
    conf = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            conf[key.strip().replace("-", "_")] = value.strip()
    return conf


def _cell(v) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    return repr(float(v))


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([r[0]] + [_cell(v) if not isinstance(v, str) else v for v in r[1:]])
    return buf.getvalue()


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text.rstrip("\n"))


def _profile(args):
    if not args.density:
        raise UsageError("--density is required")
    return parse_density(args.density)


def _cfg(args) -> QuadratureConfig:
    kw = {}
    if args.nodes_per_dim:
        kw["nodes_per_dim"] = args.nodes_per_dim
    if args.grid_sizes:
        kw["grid_sizes"] = tuple(int(g) for g in args.grid_sizes.split(","))
    return QuadratureConfig(**kw)


def _table(profile, args, orders) -> SumRuleTable:
    method = _METHODS.get(args.method)
    if method is None:
        raise UsageError(f"unknown method {args.method!r}")
    table = sum_rules(profile, args.bc, orders, method=method, cfg=_cfg(args),
                      zero_mode=args.zero_mode)
    if args.tol is not None:
        bad = [(s, e) for s, e in zip(table.orders, table.err_est) if e > args.tol]
        if bad:
            s, e = bad[0]
            exc = AccuracyError(f"Z({s}) error estimate {e:.2e} above --tol {args.tol:.2e}",
                                value=table[s], err_est=e)
            exc.partial = table.to_dict()
            raise exc
    return table


def _coeffs(args, profile=None) -> AsymptoticCoefficients:
    if profile is not None:
        base = asym_coeffs(profile)
    else:
        base = AsymptoticCoefficients(1.0, 0.375)
    alpha = base.alpha if args.alpha is None else args.alpha
    beta = base.beta if args.beta is None else args.beta
    return AsymptoticCoefficients(alpha, beta, base.a)


# -- commands ----------------------------------------------------------------------

def cmd_zeta(args) -> str:
    table = _table(_profile(args), args, parse_orders(args.orders))
    if args.format == "csv":
        return _csv([(s, v, e) for s, v, e in zip(table.orders, table.values, table.err_est)],
                     ("s", "value", "err_est"))
    return table.to_json()


def _bounds(zmap):
    out = []
    for s in sorted(zmap):
        if s + 1 in zmap:
            b = ex.euler_bounds(zmap, s)
            out.append({"s": s, "lower": float(b.lower), "upper": float(b.upper)})
    return out


def cmd_bounds(args) -> str:
    table = _table(_profile(args), args, parse_orders(args.orders))
    rows = _bounds(table.as_mapping())
    if not rows:
        raise UsageError("bounds need two consecutive orders")
    if args.format == "csv":
        return _csv([(r["s"], r["lower"], r["upper"]) for r in rows], ("s", "lower", "upper"))
    return json.dumps({"bc": table.bc.value, "bounds": rows})


def cmd_estimate(args) -> str:
    if args.fixtures:
        if args.fixtures != "horgan-chan":
            raise UsageError(f"unknown fixture set {args.fixtures!r}")
        orders = parse_orders(args.orders or "1..9")
        mp.mp.dps = args.dps
        zmap = {s: fixtures.horgan_chan_zeta(s, dps=args.dps) for s in orders}
        bc = BC.DD
        coeffs = _coeffs(args)
    else:
        profile = _profile(args)
        table = _table(profile, args, parse_orders(args.orders or "1..4"))
        zmap, bc = table.as_mapping(), table.bc
        coeffs = _coeffs(args, profile)
    waring = ex.waring_sequence(zmap)
    berry = ex.berry_sequence(zmap, coeffs, bc)
    result = {"bc": bc.value, "alpha": coeffs.alpha, "beta": coeffs.beta,
              "waring": waring.to_dict(), "berry": berry.to_dict(),
              "bounds": _bounds(zmap)}
    if args.format == "csv":
        return _csv([(q, w, b) for q, w, b in zip(waring.q, waring.estimates, berry.estimates)],
                    ("q", "waring", "berry"))
    if args.fixtures:
        # floats hide digits beyond 17; keep the full-precision Shanks limit too
        for key, seq in (("waring", waring), ("berry", berry)):
            result[key]["best_str"] = mp.nstr(seq.shanks_table().best, args.dps) \
                if len(seq.estimates) >= 3 else None
    return json.dumps(result)


def cmd_spectrum(args) -> str:
    res = solve_spectrum(_profile(args), args.bc, args.modes, args.grid)
    if args.format == "csv":
        return _csv([(k + 1, v, e) for k, (v, e) in enumerate(zip(res.eigenvalues, res.err_est))],
                    ("k", "eigenvalue", "err_est"))
    return res.to_json()


def _sweep_point(args, value, orders):
    row = {"param": value, "lower": None, "upper": None, "shanks": None,
           "oracle": None, "status": "ok"}
    try:
        spec = args.density.replace("{}", str(value))
        profile = parse_density(spec)
    except StringZetaError as exc:
        row["status"] = f"error: {exc}"
        return row
    try:
        zmap = _table(profile, args, orders).as_mapping()
        if len(orders) >= 2:
            b = ex.euler_bounds(zmap, orders[-2])
            row["lower"], row["upper"] = float(b.lower), float(b.upper)
        else:
            row["lower"] = float(zmap[orders[-1]]) ** (-1.0 / orders[-1])
        if len(orders) >= 3:
            w = ex.waring_sequence({s: zmap[s] for s in orders[-3:]})
            row["shanks"] = float(ex.shanks(w.estimates)[0])
    except (StringZetaError, ValueError) as exc:
        row["status"] = f"error: {exc}"
    if args.oracle:
        try:
            row["oracle"] = solve_spectrum(profile, args.bc, 1).eigenvalues[0]
        except (StringZetaError, ValueError) as exc:
            row["status"] = f"error: {exc}"
    return row


def cmd_sweep(args) -> str:
    if not args.density or "{}" not in args.density:
        raise UsageError("--density must be a template containing {} for the swept value")
    if not args.values:
        raise UsageError("--values is required and must be nonempty")
    try:
        values = [float(v) for v in args.values.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad --values {args.values!r}") from None
    if not values:
        raise UsageError("--values is empty")
    # validate the template on the first point before dispatching work
    parse_density(args.density.replace("{}", str(values[0])))
    orders = parse_orders(args.orders or "3,4,5")
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        rows = list(pool.map(lambda v: _sweep_point(args, v, orders), values))
    if args.format == "json":
        return json.dumps({"columns": list(SWEEP_COLUMNS), "rows": rows})
    return _csv([tuple(r[c] for c in SWEEP_COLUMNS) for r in rows], SWEEP_COLUMNS)


def cmd_diagrams(args) -> str:
    diagrams = enumerate_diagrams(args.order)
    if args.format == "json":
        return json.dumps({"n": args.order, "count": len(diagrams),
                           "diagrams": [str(d) for d in diagrams]})
    return "\n".join(str(d) for d in diagrams)


COMMANDS = {"zeta": cmd_zeta, "bounds": cmd_bounds, "estimate": cmd_estimate,
            "spectrum": cmd_spectrum, "sweep": cmd_sweep, "diagrams": cmd_diagrams}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file mirroring the long flags")
    common.add_argument("--density", help="density spec, e.g. borg:alpha=2")
    common.add_argument("--bc", default="dd", help="dd, nn, dn, nd or pp")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", help="write output to this path")
    common.add_argument("--tol", type=float, default=None,
                        help="absolute error-estimate ceiling for sum rules (exit 3 if missed)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--method", default="auto",
                        help="auto, diagram, kernel or closed")
    common.add_argument("--zero-mode", default=None, choices=("regularized", "projected"),
                        help="NN/PP convention; zeta defaults to regularized (the "
                             "published closed forms), eigenvalue commands to projected")
    common.add_argument("--nodes-per-dim", type=int, default=None)
    common.add_argument("--grid-sizes", default=None, help="kernel grids, e.g. 16,32,64")

    p = argparse.ArgumentParser(prog="stringzeta", description=__doc__.split("\n\n")[0],
                                epilog=__doc__.split("\n\n", 1)[1],
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)
    z = sub.add_parser("zeta", parents=[common], help="sum rules Z(s)")
    z.add_argument("--orders", default="1")
    b = sub.add_parser("bounds", parents=[common], help="Euler bounds on E1")
    b.add_argument("--orders", default="1..4")
    e = sub.add_parser("estimate", parents=[common], help="Waring, tail-corrected and Shanks estimates")
    e.add_argument("--orders", default=None)
    e.add_argument("--fixtures", default=None, help="use exact values: horgan-chan")
    e.add_argument("--alpha", type=float, default=None)
    e.add_argument("--beta", type=float, default=None)
    e.add_argument("--dps", type=int, default=40, help="working digits with --fixtures")
    s = sub.add_parser("spectrum", parents=[common], help="finite-difference eigenvalues")
    s.add_argument("--modes", type=int, default=5)
    s.add_argument("--grid", type=int, default=None)
    w = sub.add_parser("sweep", parents=[common], help="bounds and estimates over a parameter",
                       epilog="CSV columns: " + ", ".join(SWEEP_COLUMNS)
                       + "; NaN is written as an empty cell")
    w.add_argument("--values", default=None,
                   help="comma-separated parameter values (write --values=-0.5,2 "
                        "when the first value is negative)")
    w.add_argument("--orders", default=None)
    w.add_argument("--no-oracle", dest="oracle", action="store_false")
    d = sub.add_parser("diagrams", parents=[common], help="list cycle diagrams of order n")
    d.add_argument("--order", type=int, required=True)
    return p


def _apply_config(parser, args, argv):
    conf = _read_config(args.config)
    given = {a.split("=", 1)[0].lstrip("-").replace("-", "_") for a in argv if a.startswith("--")}
    sub = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest: a for a in sub._actions}
    for key, value in conf.items():
        if key not in known:
            raise UsageError(f"unknown config key {key!r}")
        if key in given:
            continue
        action = known[key]
        if isinstance(action, argparse._StoreFalseAction):
            setattr(args, key, value.lower() not in ("1", "true", "yes"))
        else:
            setattr(args, key, action.type(value) if action.type else value)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            _apply_config(parser, args, argv)
        if args.zero_mode is None:
            args.zero_mode = "regularized" if args.command == "zeta" else "projected"
        if args.format is None:
            args.format = "csv" if args.command == "sweep" else "json"
        _emit(args, COMMANDS[args.command](args))
        return 0
    except AccuracyError as exc:
        partial = {"error": str(exc), "value": exc.value, "err_est": exc.err_est}
        if getattr(exc, "partial", None):
            partial["partial"] = exc.partial
        print(json.dumps(partial), file=sys.stderr)
        return 3
    except (TailInconsistencyError, NumericalError) as exc:
        print(f"stringzeta: {exc}", file=sys.stderr)
        return 3
    except (UsageError, CapabilityError, DataError, ValueError, OSError) as exc:
        print(f"stringzeta: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: thresholds, verification suites, figure CSVs and oracles.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import fading_bc as fbc
from . import interference as ic
from . import shamai_laroia as sl
from .errors import HermiteCoordsError
from .quadrature import QuadratureSpec
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

REGIMES = (
    ("T1", "a <= T1: iid Gaussian inputs with interference treated as noise are sum-capacity optimal"),
    ("T2", "a > T2: synchronous time sharing beats Gaussian inputs treating interference as noise"),
    ("T3", "a > T3: opposite H_3 perturbations of the two inputs beat iid Gaussian inputs"),
    ("T4", "a > T4: blind time sharing with a known delay beats Gaussian inputs"),
)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    out: str = None
    bits: bool = False
    quad: QuadratureSpec = None

    def rate(self, x):
        """Display conversion for rates; thresholds never go through here."""
        return x / math.log(2.0) if self.bits else x

    @property
    def unit(self):
        return "bits" if self.bits else "nats"


def fmt(x):
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.9g}"


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def emit(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc
    print(f"wrote {out}")


def _eps_ladder(text):
    if text is None:
        return None
    try:
        vals = [float(s) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(f"--eps must be a comma-separated list of numbers, got {text!r}") from exc
    if not vals or any(v <= 0 for v in vals):
        raise UsageError("--eps values must be positive")
    return vals


def _positive(name, x):
    if x is None or not x > 0:
        raise UsageError(f"{name} must be positive, got {x}")
    return x


def load_fading(path):
    if path is None:
        return fbc.reference_fading()
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"fading law file not found: {path}")
    try:
        return fbc.FadingLaw.from_json(p.read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


# ---------------------------------------------------------------- commands


def cmd_thresholds(cfg):
    p = _positive("--power", cfg.params["power"])
    t0 = time.perf_counter()
    ladder = ic.threshold_ladder(p)
    dt = time.perf_counter() - t0
    print(f"p = {p:g}")
    print("T1        T2        T3        T4")
    print("  ".join(f"{ladder[t]:.6f}" for t in ("T1", "T2", "T3", "T4")))
    print(f"T4^2 = {ladder['T4'] ** 2:.6f}")
    for name, text in REGIMES:
        print(f"  {text}  ({name} = {ladder[name]:.6f})")
    ordered = ladder["T1"] < ladder["T2"] < ladder["T3"] < ladder["T4"]
    print(f"ordering T1 < T2 < T3 < T4: {'yes' if ordered else 'NO'}   [{dt * 1e3:.1f} ms]")
    return EXIT_OK


def cmd_verify(cfg):
    names = SUITES if cfg.params["suite"] == "all" else (cfg.params["suite"],)
    failed = 0
    for name in names:
        print(f"[{name}]")
        kw = {"q": cfg.quad} if name == "oracle" else {}
        for check in run_suite(name, **kw):
            print("  " + check.line())
            failed += not check.passed
    print(f"{failed} failing propert{'y' if failed == 1 else 'ies'}")
    return EXIT_FAIL if failed else EXIT_OK


def _bc_base(cfg):
    mu = _positive("--mu", cfg.params["mu"])
    v = cfg.params["noise_v"]
    if not 0 < v < 1:
        raise UsageError(f"--noise-v must lie in (0, 1), got {v}")
    P = _positive("--power", cfg.params["power"])
    return P, v, mu


def cmd_figure(cfg):
    which = cfg.params["which"]
    if which == "sl_region":
        step = cfg.params["grid"] or 0.05
        h, u = _sl_grid(step)
        hits = sl.sl_scan(h, u, range(3, 9))
        emit(sl.scan_csv(hits), cfg.out)
        return EXIT_OK
    P, v, mu = _bc_base(cfg)
    law = load_fading(cfg.params["fading"])
    n = int(cfg.params["grid"] or 10000)
    if n < 2:
        raise UsageError("--grid must be at least 2 points")
    R = P * np.arange(1, n + 1) / n
    base = fbc.BCParams(P, v, mu, 0.0)
    if which == "fig1":
        rows = [(r, cfg.rate(fbc.mu_rate_gaussian(base.with_R(float(r)), law))) for r in R]
        emit(csv_text(["R", "mu_rate"], rows), cfg.out)
    else:
        k = cfg.params["k"] or 8
        rows = [(r, fbc.hermite_gain(k, float(r), base, law)) for r in R]
        emit(csv_text(["R", "gain"], rows), cfg.out)
    return EXIT_OK


def cmd_fading_bc(cfg):
    P, v, mu = _bc_base(cfg)
    law = load_fading(cfg.params["fading"])
    split = fbc.optimal_r(P, v, mu, law)
    params = fbc.BCParams(P, v, mu, split.R)
    print(f"fading law: {law.to_json()}")
    print(f"P = {P:g}  v = {v:g}  mu = {mu:g}")
    print(f"optimal R = {split.R:.10f} ({'interior' if split.interior else 'boundary'})")
    print(f"stationary points: {', '.join(f'{r:.10f}' for r in split.stationary_points) or 'none'}")
    print(f"Gaussian mu-rate = {cfg.rate(split.value):.9f} {cfg.unit}")
    other = fbc.optimal_r(2 * P, v, mu, law)
    print(f"optimal R at 2P = {other.R:.10f} (shift {other.R - split.R:+.2e})")
    if split.R == 0:
        print("R = 0: no fine message, Hermite gains undefined")
        return EXIT_OK
    print("k   hermite_gain      weak_condition")
    for k in range(3, 11):
        g = fbc.hermite_gain(k, split.R, params, law)
        w = fbc.weak_condition(k, split.R, params, law)
        print(f"{k:<3} {g:+.9e}  {w:+.9e}")
    if cfg.params["verify"]:
        k = cfg.params["k"] or 8
        delta = cfg.params["delta"]
        ladder = _eps_ladder(cfg.params["eps"])
        # the construction needs P = 2R; the optimal R does not depend on P
        vparams = fbc.BCParams(2 * split.R, v, mu, split.R)
        for d in (delta, delta / 2):
            t0 = time.perf_counter()
            lim, vals = fbc.counterexample_limit(vparams, law, k, d, ladder, cfg.quad)
            print(
                f"counter-example k={k} delta={d:g}: limit = {lim:+.9e} "
                f"(values {', '.join(f'{x:+.6e}' for x in vals)})  [{time.perf_counter() - t0:.1f}s]"
            )
        print(f"half the Hermite gain at P = 2R: {0.5 * fbc.hermite_gain(k, split.R, vparams, law):+.9e}")
    return EXIT_OK


def cmd_ic_gain(cfg):
    p = _positive("--power", cfg.params["power"])
    a = cfg.params["a"]
    if a is None or a < 0:
        raise UsageError(f"--a must be >= 0, got {a}")
    k = cfg.params["k"] or 3
    params = ic.ICParams(a, p)
    print(f"a = {a:g}  p = {p:g}  k = {k}")
    print(f"f_k              = {ic.f_k(params, k):+.9e}")
    print(f"predicted limit  = {ic.oracle_gain_limit(params, k):+.9e}  (2 p^k f_k)")
    print(f"Gaussian TIN     = {cfg.rate(ic.gaussian_tin_sum_rate(params)):.9f} {cfg.unit}")
    print(f"blind TS         = {cfg.rate(ic.blind_ts_sum_rate(params)):.9f} {cfg.unit}")
    print(f"B2               = {cfg.rate(ic.b2(params)):+.9e} {cfg.unit}")
    if cfg.params["numeric"]:
        t0 = time.perf_counter()
        lim, vals = ic.sum_rate_limit(params, k, cfg.params["delta"], _eps_ladder(cfg.params["eps"]), cfg.quad)
        print(f"numeric limit    = {lim:+.9e}  (values {', '.join(f'{x:+.6e}' for x in vals)})  [{time.perf_counter() - t0:.1f}s]")
    return EXIT_OK


def _sl_grid(step):
    if not step > 0:
        raise UsageError("--grid step must be positive")
    h = np.round(np.arange(1, int(round(3.0 / step)) + 1) * step, 10)
    u = np.round(np.arange(1, int(round(5.0 / step)) + 1) * step, 10)
    return h, u


def cmd_sl(cfg):
    if cfg.params["scan"]:
        h, u = _sl_grid(cfg.params["grid"] or 0.05)
        emit(sl.scan_csv(sl.sl_scan(h, u, range(3, 9))), cfg.out)
        return EXIT_OK
    if cfg.params["region_measure"]:
        h, u = _sl_grid(cfg.params["grid"] or 0.05)
        rows = []
        for k in range(3, 9):
            rows += [(uu, k, m) for uu, m in sl.region_measure(h, u, k)]
        emit(csv_text(["u", "k", "h_measure"], rows), cfg.out)
        return EXIT_OK
    h, u = cfg.params["h"], cfg.params["u"]
    if h is None or u is None:
        raise UsageError("sl needs --h and --u (or --scan / --region-measure)")
    k = cfg.params["k"] or 3
    pt = sl.SLPoint(h, u, k)
    g = sl.sl_gap(pt)
    print(f"G(h={h:g}, u={u:g}, k={k}) = {g:+.9e}  ({'counter-example' if g > 0 else 'no counter-example'})")
    if cfg.params["numeric"]:
        p = _positive("--power", cfg.params["power"])
        t0 = time.perf_counter()
        lim, vals = sl.sl_numeric_limit(h, p, u * p, k, cfg.params["delta"], _eps_ladder(cfg.params["eps"]), cfg.quad)
        print(f"(2/eps^2) dI limit = {lim:+.9e}  vs -G = {-g:+.9e}  [{time.perf_counter() - t0:.1f}s]")
    return EXIT_OK


COMMANDS = {
    "thresholds": cmd_thresholds,
    "verify": cmd_verify,
    "figure": cmd_figure,
    "fading-bc": cmd_fading_bc,
    "ic-gain": cmd_ic_gain,
    "sl": cmd_sl,
}


# ---------------------------------------------------------------- parsing


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bits", action="store_true", help="display rates in bits instead of nats")
    common.add_argument("--out", help="write CSV output here instead of stdout")
    common.add_argument("--quad-nodes", type=int, default=4000, help="quadrature panel count (>= 2000)")
    common.add_argument("--quad-radius", type=float, default=12.0, help="quadrature half-width in std devs (>= 8)")

    pert = argparse.ArgumentParser(add_help=False)
    pert.add_argument("--k", type=int, help="Hermite degree")
    pert.add_argument("--eps", help="comma-separated eps ladder (default: positivity-driven)")
    pert.add_argument("--delta", type=float, default=0.05, help="H_4k correction weight")

    bc = argparse.ArgumentParser(add_help=False)
    bc.add_argument("--power", type=float, default=2 * fbc.REFERENCE_R, help="total power P")
    bc.add_argument("--mu", type=float, default=1.25)
    bc.add_argument("--noise-v", type=float, default=0.25, help="strong-user noise variance in (0, 1)")
    bc.add_argument("--fading", help="fading law JSON (default: H in {1, 10} equiprobable)")

    ap = argparse.ArgumentParser(prog="hermite-coords", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("thresholds", parents=[common], help="interference thresholds T1..T4")
    s.add_argument("--power", type=float, default=1.0)

    s = sub.add_parser("verify", parents=[common], help="run a property suite")
    s.add_argument("suite", choices=(*SUITES, "all"))

    s = sub.add_parser("figure", parents=[common, bc], help="figure data as CSV")
    s.add_argument("which", choices=("fig1", "fig2", "sl_region"))
    s.add_argument("--k", type=int)
    s.add_argument("--grid", type=float, help="points along R (fig1/fig2) or h/u step (sl_region)")

    s = sub.add_parser("fading-bc", parents=[common, bc, pert], help="fading broadcast channel report")
    s.add_argument("--verify", action="store_true", help="also run the numeric counter-example")

    s = sub.add_parser("ic-gain", parents=[common, pert], help="interference-channel gain at one point")
    s.add_argument("--power", type=float, default=1.0)
    s.add_argument("--a", type=float, required=True, help="interference coefficient")
    s.add_argument("--numeric", action="store_true", help="also run the quadrature oracle")

    s = sub.add_parser("sl", parents=[common, pert], help="interference-minimizing gap G(h, u, k)")
    s.add_argument("--h", type=float)
    s.add_argument("--u", type=float, help="inverse SNR v/p")
    s.add_argument("--power", type=float, default=1.0, help="input power p for --numeric")
    s.add_argument("--numeric", action="store_true", help="also run the quadrature oracle")
    s.add_argument("--scan", action="store_true", help="CSV of all positive-gap grid points")
    s.add_argument("--region-measure", action="store_true", help="CSV of positive-region length in h per u")
    s.add_argument("--grid", type=float, help="h/u step for --scan and --region-measure")
    return ap


def config_from_args(args):
    try:
        quad = QuadratureSpec(radius_sigmas=args.quad_radius, nodes=args.quad_nodes)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    skip = {"command", "out", "bits", "quad_nodes", "quad_radius"}
    params = {k: v for k, v in vars(args).items() if k not in skip}
    for key in ("k", "eps", "grid", "fading", "verify", "numeric", "scan", "region_measure", "a", "h", "u"):
        params.setdefault(key, None)
    if params["k"] is not None and params["k"] < 2:
        raise UsageError(f"--k must be >= 2, got {params['k']}")
    if "delta" in params and params["delta"] < 0:
        raise UsageError("--delta must be >= 0")
    return RunConfig(args.command, params, args.out, args.bits, quad)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HermiteCoordsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

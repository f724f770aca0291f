"""``decohere`` command-line interface.

Subcommands: figure1, profile, attenuation, sweep, classify.

Exit codes: 0 success (or in regime for ``classify``), 1 out of regime
(``classify`` only), 2 I/O failure, 3 numerical cross-check failure,
64 usage error.
"""
from __future__ import annotations

import argparse
import io
import math
import sys

import numpy as np

from . import __version__
from .analysis import FIGURE1_LABELS, build_figure1, normalization_check, sweep
from .config import ConfigError, RunConfig, load_config
from .exceptions import DomainError, NoDecoherenceTime, OracleFailure
from .kernels import EXTENSION_NOTE, get_kernel
from .params import DEFAULT_THRESHOLD, classify_regime, mixing_time
from .superposition import attenuation_series, decoherence_time, profile
from .svg import line_plot

EXIT_OK = 0
EXIT_OUT_OF_REGIME = 1
EXIT_IO = 2
EXIT_ORACLE = 3
EXIT_USAGE = 64

FIGURE1_HEADER = "x_over_sigma,sigmaP_dlam5,sigmaP_dlam1,sigmaP_T0"
PROFILE_HEADER = "x_over_sigma,sigmaP"
ATTENUATION_HEADER = "t_natural,a_exact,a_gauss"
SWEEP_HEADER = "axis_value,a_at_tstar,visibility,tau_d,in_regime"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _num(v) -> str:
    return f"{float(v):.12e}"


def _csv(header: str, rows) -> str:
    buf = io.StringIO()
    buf.write(header + "\n")
    for row in rows:
        buf.write(",".join(c if isinstance(c, str) else _num(c) for c in row) + "\n")
    return buf.getvalue()


def _meta_path(path: str) -> str:
    stem = path.rsplit(".", 1)[0] if "." in path.rsplit("/", 1)[-1] else path
    return stem + ".meta"


def _meta_text(items: dict) -> str:
    lines = [f"engine_version = {__version__}"]
    for k, v in items.items():
        lines.append(f"{k} = {v!r}" if isinstance(v, float) else f"{k} = {v}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None, meta: dict | None = None):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    if meta is not None:
        with open(_meta_path(out), "w", encoding="utf-8") as fh:
            fh.write(_meta_text(meta))


def _write_svg(path: str | None, markup: str):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(markup)


def _natural_meta(res, kernel_name: str) -> dict:
    p = res.natural
    meta = {
        "mode": res.mode,
        "kernel": kernel_name,
        "d_tilde": p.d_tilde,
        "t_temp": p.t_temp,
        "g_tilde": p.g_tilde,
        "d_over_lambda": p.d_over_lambda,
    }
    if get_kernel(kernel_name).is_extension:
        meta["kernel_note"] = EXTENSION_NOTE
    return meta


def _note_kernel(kernel_name: str):
    if get_kernel(kernel_name).is_extension:
        print(f"note: {EXTENSION_NOTE}", file=sys.stderr)


def _resolve(args):
    values = load_config(args.config) if args.config else {}
    cfg = RunConfig().update(values)
    overrides = {k: getattr(args, k, None) for k in RunConfig.keys()}
    cfg.update(overrides)
    if args.out is None:
        args.out = cfg.output
    return cfg.resolve()


def cmd_figure1(args) -> int:
    ds = build_figure1()
    cols = [ds.curves[label].values for label in FIGURE1_LABELS]
    text = _csv(FIGURE1_HEADER, zip(ds.xs, *cols))
    meta = {
        "command": "figure1",
        "kernel": "free",
        "d_tilde": ds.d_tilde,
        "g_tilde": 0.0,
        "t_natural": ds.t,
        "t_over_tmix": 0.2,
        "t_temp_dlam5": ds.curves["d/λ=5"].params.t_temp,
        "t_temp_dlam1": ds.curves["d/λ=1"].params.t_temp,
        "t_temp_T0": 0.0,
        "x_halfwidth_sigma": float(ds.xs[-1]),
        "n_points": len(ds.xs),
    }
    _emit(text, args.out, meta)
    _write_svg(args.svg, line_plot(
        ds.xs,
        {"d/λ_th = 5": cols[0], "d/λ_th = 1": cols[1], "T = 0": cols[2]},
        "x / σ", "σ P(x, t)",
    ))
    return EXIT_OK


def cmd_profile(args) -> int:
    res = _resolve(args)
    cfg = res.config
    t = res.time()
    p = res.natural
    xs = np.linspace(-cfg.x_halfwidth_sigma, cfg.x_halfwidth_sigma, cfg.n_points)
    prof = profile(xs, cfg.kernel, t, p)
    print(classify_regime(p), file=sys.stderr)
    _note_kernel(cfg.kernel)
    try:
        report = normalization_check(cfg.kernel, t, p)
    except OracleFailure as exc:
        print(f"normalization: FAILED ({exc})", file=sys.stderr)
        return EXIT_ORACLE
    verdict = "pass" if report.passed else "FAIL"
    print(f"normalization: integral = {report.value:.15f}, "
          f"error estimate = {report.error_estimate:.3g}, tol = {report.tol:g} -> {verdict}", file=sys.stderr)
    if not report.passed:
        return EXIT_ORACLE
    meta = dict(_natural_meta(res, cfg.kernel), command="profile", t_natural=t,
                x_halfwidth_sigma=cfg.x_halfwidth_sigma, n_points=cfg.n_points)
    _emit(_csv(PROFILE_HEADER, zip(xs, prof.values)), args.out, meta)
    _write_svg(args.svg, line_plot(xs, {"σP": prof.values}, "x / σ", "σ P(x, t)"))
    return EXIT_OK


def cmd_attenuation(args) -> int:
    res = _resolve(args)
    p = res.natural
    if args.steps < 2:
        raise UsageError("--steps must be >= 2")
    try:
        tau = decoherence_time(p)
    except NoDecoherenceTime:
        tau = math.inf
    t_max = args.t_max
    if t_max is None:
        t_max = 2.0 * tau if math.isfinite(tau) else (2.0 * mixing_time(p) if p.d_tilde > 0 else 1.0)
    if not t_max > 0:
        raise UsageError("--t-max must be > 0")
    ts = np.linspace(0.0, t_max, args.steps)
    _note_kernel(res.kernel)
    if math.isinf(tau):
        print("a(t) ≡ 1; no finite decoherence time", file=sys.stderr)
        rows = zip(ts, np.ones_like(ts), np.ones_like(ts))
        a_exact = a_gauss = np.ones_like(ts)
    else:
        ser = attenuation_series(res.kernel, ts, p)
        a_exact, a_gauss = ser.a_exact, ser.a_gauss
        rows = zip(ts, a_exact, a_gauss)
        line = f"tau_d = {tau:.6g} (natural units)"
        if res.seconds_per_unit is not None:
            line += f" = {tau * res.seconds_per_unit:.6g} s"
        print(line, file=sys.stderr)
    meta = dict(_natural_meta(res, res.kernel), command="attenuation", t_max=float(t_max),
                steps=args.steps, tau_d_natural=float(tau))
    _emit(_csv(ATTENUATION_HEADER, rows), args.out, meta)
    _write_svg(args.svg, line_plot(ts, {"a exact": a_exact, "a gauss": a_gauss}, "t (natural units)", "a(t)"))
    return EXIT_OK


def _parse_values(text: str):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse --values {text!r}") from None


def cmd_sweep(args) -> int:
    res = _resolve(args)
    cfg = res.config
    values = _parse_values(args.values)
    t = cfg.t_natural
    frac = 0.2 if cfg.t_over_tmix is None else cfg.t_over_tmix
    try:
        result = sweep(args.axis, values, res.natural, cfg.kernel, t=t, t_over_tmix=frac,
                       threshold=args.threshold)
    except OracleFailure as exc:
        print(f"sweep aborted: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except (ValueError, DomainError) as exc:
        raise UsageError(str(exc)) from exc
    _note_kernel(cfg.kernel)
    rows = [
        (pt.value, pt.a, pt.visibility, pt.tau_d, "true" if pt.in_regime else "false")
        for pt in result.points
    ]
    meta = dict(_natural_meta(res, cfg.kernel), command="sweep", axis=args.axis,
                values=",".join(repr(v) for v in values))
    _emit(_csv(SWEEP_HEADER, rows), args.out, meta)
    return EXIT_OK


def cmd_classify(args) -> int:
    res = _resolve(args)
    if not args.threshold > 0:
        raise UsageError("--threshold must be > 0")
    report = classify_regime(res.natural, args.threshold)
    print(report)
    return EXIT_OK if report.in_decoherence_regime else EXIT_OUT_OF_REGIME


_CONFIG_FLAGS = [
    ("--mode", str), ("--mass-g", float), ("--temperature-K", float), ("--sigma-cm", float),
    ("--d-cm", float), ("--gamma-per-s", float), ("--d-over-sigma", float),
    ("--d-over-lambda", float), ("--t-temp", float), ("--gamma-tilde", float),
    ("--kernel", str), ("--x-halfwidth-sigma", float), ("--n-points", int),
    ("--t-over-tmix", float), ("--t-natural", float),
]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="decohere", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, config=True):
        sp.add_argument("--out", help="output CSV path (default: standard output)")
        if config:
            sp.add_argument("--config", help="key = value configuration file")
            for flag, typ in _CONFIG_FLAGS:
                sp.add_argument(flag, type=typ, dest=flag[2:].replace("-", "_"), default=None)

    sp = sub.add_parser("figure1", help="three reference curves at d = 20 sigma, t = t_mix / 5")
    common(sp, config=False)
    sp.add_argument("--svg", help="also write an SVG line plot")
    sp.set_defaults(func=cmd_figure1)

    sp = sub.add_parser("profile", help="sigma * P(x, t) on a grid")
    common(sp)
    sp.add_argument("--svg")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("attenuation", help="exact and Gaussian-limit a(t)")
    common(sp)
    sp.add_argument("--t-max", type=float, default=None, help="natural units (default 2 tau_d)")
    sp.add_argument("--steps", type=int, default=101)
    sp.add_argument("--svg")
    sp.set_defaults(func=cmd_attenuation)

    sp = sub.add_parser("sweep", help="vary one parameter")
    common(sp)
    sp.add_argument("--axis", required=True, choices=["d_over_lambda", "d_over_sigma", "gamma_tilde", "t"])
    sp.add_argument("--values", required=True, help="comma-separated, strictly increasing")
    sp.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("classify", help="is d >> lambda_th, sigma?")
    common(sp)
    sp.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    sp.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "config"):
        args.config = None
    try:
        return args.func(args)
    except (ConfigError, UsageError, DomainError) as exc:
        print(f"decohere: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleFailure as exc:
        print(f"decohere: cross-check failed: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except OSError as exc:
        print(f"decohere: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

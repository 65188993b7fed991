"""Command-line front end writing CSV tables.

    zzbound fig2a | fig2b | fig4 | bounds | detect | compare-cr  [options]

Exit codes: 0 success, 2 usage or parameter error, 3 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .bounds import (
    COSINE_LPI_CONSTANT,
    DEFAULT_TOL,
    LINEAR_LPI_CONSTANT,
    ConvergenceError,
    cr_bound,
    zz_bound_from_distance,
    zz_bound_quadrature,
    zz_closed_cosine,
    zz_closed_linear,
)
from .detectability import (
    DEFAULT_GRID_POINTS,
    DEFAULT_THRESHOLD,
    fit_power_law,
    min_detectable,
)
from .fidelity import GeneratorMoments, cosine_bound_model, linear_bound_model, state_model
from .prior import GaussianPrior, UniformWindowPrior, prior_fisher_information
from .states import (
    Variant,
    dual_fock_like_fidelity,
    family_from_nbar,
    make_state,
    mixed_fock_distance,
    noon_like_fidelity,
    parse_variant,
    ssw_fidelity,
    state_total_photons,
)

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 2, 3


@dataclass
class RunConfig:
    command: str
    model: Optional[str] = None
    state: Optional[str] = None
    params: dict = field(default_factory=dict)
    widths: list = field(default_factory=list)
    mean_h: float = 1.0
    std_h: float = 1.0
    seminorm_h: Optional[float] = None
    sweep_min: Optional[float] = None
    sweep_max: Optional[float] = None
    points: Optional[int] = None
    spacing: str = "log"
    threshold: float = DEFAULT_THRESHOLD
    window: tuple = (1e-9, math.pi)
    grid_points: int = DEFAULT_GRID_POINTS
    tol: float = DEFAULT_TOL
    out: Optional[str] = None
    plot_script: bool = False

    def validate(self):
        if not 0.0 < self.tol <= 1e-3:
            raise ValueError("--tol must lie in (0, 1e-3]")
        if self.points is not None and self.points < 2:
            raise ValueError("--points must be >= 2")
        if self.sweep_min is not None and self.sweep_max is not None and not self.sweep_min < self.sweep_max:
            raise ValueError("sweep minimum must be smaller than maximum")
        if self.plot_script and not self.out:
            raise ValueError("--plot-script needs --out <path>")

    def sweep(self, lo, hi, n):
        lo = self.sweep_min if self.sweep_min is not None else lo
        hi = self.sweep_max if self.sweep_max is not None else hi
        n = self.points if self.points is not None else n
        if self.spacing == "lin":
            return np.linspace(lo, hi, n)
        return np.geomspace(lo, hi, n)


@dataclass
class Table:
    header: list
    rows: list
    footer: list = field(default_factory=list)
    # (x column, y columns, log axes) for the generated plot script
    plot: tuple = ()


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".12g")


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([fmt(v) for v in row])
    for line in table.footer:
        buf.write(line + "\n")
    return buf.getvalue()


def plot_script_text(table: Table, csv_name: str) -> str:
    x, ys, logscale = table.plot
    lines = [
        "# gnuplot script",
        "set datafile separator ','",
        "set key autotitle columnhead",
    ]
    if logscale:
        lines.append(f"set logscale {logscale}")
    cols = [table.header.index(y) + 1 for y in ys]
    xcol = table.header.index(x) + 1
    parts = [f"'{csv_name}' using {xcol}:{c} with lines" for c in cols]
    lines.append("plot " + ", \\\n     ".join(parts))
    return "\n".join(lines) + "\n"


# -- tables ---------------------------------------------------------------------

def fig2_table(variant: str, cfg: RunConfig) -> Table:
    """Closed-form and quadrature bounds against z0 for the linear (a) or cosine (b) model."""
    rows = []
    if variant == "a":
        moments = GeneratorMoments(mean_h=cfg.mean_h)
        model = linear_bound_model(moments)
        x0 = 1.0 / cfg.mean_h
        hl = LINEAR_LPI_CONSTANT * x0
    elif variant == "b":
        moments = GeneratorMoments(mean_h=0.0, std_h=cfg.std_h)
        model = cosine_bound_model(moments)
        x0 = 1.0 / cfg.std_h
        hl = COSINE_LPI_CONSTANT * x0
    else:
        raise ValueError(f"unknown fig2 variant {variant!r}")
    for z0 in cfg.sweep(1e-2, 1e2, 200):
        width = 2.0 * x0 * z0
        closed = zz_closed_linear(x0, width) if variant == "a" else zz_closed_cosine(cfg.std_h, width)
        quad = zz_bound_quadrature(UniformWindowPrior(0.0, width), model, cfg.tol)
        rows.append([z0, closed.value, quad.value, hl, x0 * z0 / math.sqrt(3.0)])
    header = ["z0", "dy_lb_closed", "dy_lb_quadrature", "hl_line", "prior_line"]
    return Table(header, rows, plot=("z0", ["dy_lb_closed", "hl_line", "prior_line"], "xy"))


def fig4_table(cfg: RunConfig, lam: int = 10_000) -> Table:
    # phase grid is always linear and includes both ends
    theta = np.linspace(0.0, 2.0 * math.pi, cfg.points if cfg.points is not None else 500)
    f_ssw = ssw_fidelity(lam, theta)
    f_df = dual_fock_like_fidelity(theta)
    f_noon = noon_like_fidelity(theta)
    rows = [list(r) for r in zip(theta, f_ssw, f_df, f_noon)]
    header = ["theta", "f_ssw", "f_dualfock", "f_noonlike"]
    return Table(header, rows, plot=("theta", header[1:], ""))


def _state_from_cfg(name: str, params: dict):
    variant = parse_variant(name)
    return make_state(variant, **params)


def bounds_table(cfg: RunConfig) -> Table:
    if not cfg.model:
        raise ValueError("--model is required (linear, cosine or state:<name>)")
    if not cfg.widths:
        raise ValueError("--width is required")
    kind = cfg.model.strip().lower()
    rows = []
    if kind == "linear":
        bounded = cfg.seminorm_h is not None
        moments = GeneratorMoments(mean_h=cfg.mean_h, seminorm_h=cfg.seminorm_h)
        model = linear_bound_model(moments, bounded=bounded)
        for w in cfg.widths:
            closed = zz_closed_linear(model.scale, w)
            quad = zz_bound_quadrature(UniformWindowPrior(0.0, w), model, cfg.tol)
            rows.append([w, closed.z0, closed.value, quad.value, w / math.sqrt(12.0)])
        header = ["width", "z0", "dy_lb_closed", "dy_lb_quadrature", "prior_std"]
    elif kind == "cosine":
        model = cosine_bound_model(GeneratorMoments(mean_h=0.0, std_h=cfg.std_h))
        for w in cfg.widths:
            closed = zz_closed_cosine(cfg.std_h, w)
            quad = zz_bound_quadrature(UniformWindowPrior(0.0, w), model, cfg.tol)
            rows.append([w, closed.z0, closed.value, quad.value, w / math.sqrt(12.0)])
        header = ["width", "z0", "dy_lb_closed", "dy_lb_quadrature", "prior_std"]
    elif kind.startswith("state:"):
        state = _state_from_cfg(kind.split(":", 1)[1], cfg.params)
        total = state_total_photons(state)
        for w in cfg.widths:
            prior = UniformWindowPrior(0.0, w)
            if state.variant is Variant.MIXED_FOCK:
                n, p = state.params["n"], state.params["p"]
                value = zz_bound_from_distance(
                    prior,
                    lambda g: mixed_fock_distance(n, p, np.mod(g, 2.0 * math.pi)),
                    cfg.tol,
                    scale=1.0 / total if total > 0 else None,
                    label=state.name,
                ).value
            else:
                value = zz_bound_quadrature(prior, state_model(state), cfg.tol).value
            z0 = w * total / 2.0
            rows.append([w, z0, value, w / math.sqrt(12.0)])
        header = ["width", "z0", "dy_lb_quadrature", "prior_std"]
    else:
        raise ValueError(f"unknown model {cfg.model!r}; use linear, cosine or state:<name>")
    return Table(header, rows, plot=("width", header[2:], "xy"))


def detect_table(cfg: RunConfig) -> Table:
    if not cfg.state:
        raise ValueError("--state is required")
    variant = parse_variant(cfg.state)
    fixed = dict(cfg.params)
    if variant in (Variant.NOON_LIKE, Variant.DUAL_FOCK_LIKE):
        states = [make_state(variant, **fixed)]
    else:
        sweep = cfg.sweep(10.0, 1e4, 5)
        states = [family_from_nbar(variant, float(n), **dict(fixed)) for n in sweep]
    rows, kept = [], []
    for state in states:
        res = min_detectable(state, cfg.threshold, cfg.window, cfg.grid_points)
        nbar = res.mean_photons
        if res.detectable:
            kept.append((nbar, res.gamma_m))
            rows.append([nbar, res.gamma_m, res.gamma_m * res.total_photons, True])
        else:
            rows.append([nbar, float("nan"), float("nan"), False])
    header = ["nbar", "gamma_m", "gamma_m_times_nbar", "detectable"]
    if len(kept) >= 5:
        alpha, intercept, r2 = fit_power_law(*zip(*kept))
        footer = [f"# fit alpha={fmt(alpha)} intercept={fmt(intercept)} r2={fmt(r2)} points={len(kept)}"]
    else:
        footer = [f"# fit unavailable: {len(kept)} detectable point(s), need 5"]
    return Table(header, rows, footer, plot=("nbar", ["gamma_m"], "xy"))


def compare_cr_table(cfg: RunConfig) -> Table:
    if not cfg.std_h > 0.0:
        raise ValueError("--std-h must be positive")
    rows = []
    for dx in cfg.sweep(1e-3 / cfg.std_h, 1e2 / cfg.std_h, 50):
        fisher = prior_fisher_information(GaussianPrior(0.0, dx))
        cr = cr_bound(cfg.std_h, fisher).value
        # window prior with the same standard deviation
        zz = zz_closed_cosine(cfg.std_h, math.sqrt(12.0) * dx).value
        rows.append([dx, cr, zz])
    header = ["dx", "cr_bound", "zz_cosine_closed"]
    return Table(header, rows, plot=("dx", header[1:], "xy"))


# -- argument handling --------------------------------------------------------------

def _parse_param(text: str):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    key, value = text.split("=", 1)
    try:
        return key.strip().lower(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter {key!r} needs a numeric value") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output CSV path (default: stdout)")
    common.add_argument("--plot-script", action="store_true", help="also write a gnuplot script next to the CSV")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="quadrature tolerance")
    common.add_argument("--points", type=int, help="number of sweep points")
    common.add_argument("--spacing", choices=["log", "lin"], default="log")
    common.add_argument("--seed", type=int, help="reserved; all computation is deterministic")

    parser = argparse.ArgumentParser(prog="zzbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, what in (("fig2a", "linear"), ("fig2b", "cosine")):
        p = sub.add_parser(name, parents=[common], help=f"bound vs z0 for the {what} fidelity model")
        p.add_argument("--mean-h", type=float, default=1.0)
        p.add_argument("--std-h", type=float, default=1.0)
        p.add_argument("--z0-min", dest="sweep_min", type=float)
        p.add_argument("--z0-max", dest="sweep_max", type=float)

    p = sub.add_parser("fig4", parents=[common], help="SSW, dual-Fock-like and noon-like fidelities vs phase")
    p.add_argument("--lambda", dest="lam", type=int, default=10_000)

    p = sub.add_parser("bounds", parents=[common], help="Ziv-Zakai bound for one model at given widths")
    p.add_argument("--model", required=True)
    p.add_argument("--width", type=float, nargs="+", required=True)
    p.add_argument("--mean-h", type=float, default=1.0)
    p.add_argument("--std-h", type=float, default=1.0)
    p.add_argument("--seminorm-h", type=float)
    p.add_argument("--param", type=_parse_param, action="append", default=[])
    for key in ("alpha", "r", "lambda", "nu", "nbar", "n", "p", "m"):
        p.add_argument(f"--{key}", dest=f"param_{key}", type=float)

    p = sub.add_parser("detect", parents=[common], help="minimum detectable phase over a photon-number sweep")
    p.add_argument("--state", required=True)
    p.add_argument("--param", type=_parse_param, action="append", default=[])
    p.add_argument("--nbar-min", dest="sweep_min", type=float)
    p.add_argument("--nbar-max", dest="sweep_max", type=float)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--gamma-min", type=float, default=1e-9)
    p.add_argument("--gamma-max", type=float, default=math.pi)
    p.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS)

    p = sub.add_parser("compare-cr", parents=[common], help="Cramer-Rao vs Ziv-Zakai over prior widths")
    p.add_argument("--std-h", type=float, default=1.0)
    p.add_argument("--dx-min", dest="sweep_min", type=float)
    p.add_argument("--dx-max", dest="sweep_max", type=float)
    return parser


def config_from_args(args) -> RunConfig:
    params = dict(getattr(args, "param", []) or [])
    for key in ("alpha", "r", "lambda", "nu", "nbar", "n", "p", "m"):
        value = getattr(args, f"param_{key}", None)
        if value is not None:
            params[key] = value
    cfg = RunConfig(
        command=args.command,
        model=getattr(args, "model", None),
        state=getattr(args, "state", None),
        params=params,
        widths=list(getattr(args, "width", None) or []),
        mean_h=getattr(args, "mean_h", 1.0),
        std_h=getattr(args, "std_h", 1.0),
        seminorm_h=getattr(args, "seminorm_h", None),
        sweep_min=getattr(args, "sweep_min", None),
        sweep_max=getattr(args, "sweep_max", None),
        points=args.points,
        spacing=args.spacing,
        threshold=getattr(args, "threshold", DEFAULT_THRESHOLD),
        window=(getattr(args, "gamma_min", 1e-9), getattr(args, "gamma_max", math.pi)),
        grid_points=getattr(args, "grid_points", DEFAULT_GRID_POINTS),
        tol=args.tol,
        out=args.out,
        plot_script=args.plot_script,
    )
    cfg.validate()
    return cfg


def run(cfg: RunConfig, lam: int = 10_000) -> Table:
    if cfg.command == "fig2a":
        return fig2_table("a", cfg)
    if cfg.command == "fig2b":
        return fig2_table("b", cfg)
    if cfg.command == "fig4":
        return fig4_table(cfg, lam)
    if cfg.command == "bounds":
        return bounds_table(cfg)
    if cfg.command == "detect":
        return detect_table(cfg)
    if cfg.command == "compare-cr":
        return compare_cr_table(cfg)
    raise ValueError(f"unknown command {cfg.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        table = run(cfg, getattr(args, "lam", 10_000))
    except ConvergenceError as exc:
        sys.stderr.write(f"zzbound: numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except ValueError as exc:
        sys.stderr.write(f"zzbound: parameter error: {exc}\n")
        return EXIT_USAGE
    text = render_csv(table)
    if cfg.out:
        path = Path(cfg.out)
        path.write_text(text, encoding="utf-8", newline="\n")
        if cfg.plot_script:
            script = path.with_suffix(".gp")
            script.write_text(plot_script_text(table, path.name), encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

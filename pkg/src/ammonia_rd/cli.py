"""Command-line entry point: ``ammonia-rd [--config PATH] [--out DIR] [--quiet] COMMAND``.

Exit codes: 0 success or certified, 1 usage or configuration error,
2 certificate violated, 3 inapplicable, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import outputs
from .config import RunConfig, parse_config
from .errors import AmmoniaRDError, ConfigError, ExponentZero, Inapplicable, InvalidModel
from .existence import Status, check, feasible_b_search
from .model import Regime, derive_exponents, front_exponent_conditions, validate_model
from .observables import SERIES_HEADER, cross_section, front_radius
from .pde import initial_bumps, run_simulation
from .radial import BCKind, RadialBC, asymptotic_profile, front_fit, integrate_profile
from .similarity import make_scaling, tau_of_t

EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, EXIT_INAPPLICABLE, EXIT_NUMERIC = 0, 1, 2, 3, 4

log = logging.getLogger("ammonia_rd")


class _Reporter:
    def __init__(self, quiet: bool):
        self.quiet = quiet

    def __call__(self, *lines):
        if not self.quiet:
            for line in lines:
                print(line)


def _derived(cfg: RunConfig):
    exps = derive_exponents(cfg.model, cfg.scaling.A1, cfg.scaling.A2)
    scaling = make_scaling(cfg.model, exps, cfg.scaling.A1, cfg.scaling.A2, cfg.scaling.T)
    return exps, scaling


def cmd_check(cfg: RunConfig, out: Path, say) -> int:
    try:
        exps, scaling = _derived(cfg)
    except ExponentZero as exc:
        outputs.write_json(out / "certificate.json", {"status": "inapplicable", "reason": str(exc)})
        say(f"status: inapplicable ({exc})")
        return EXIT_INAPPLICABLE
    if cfg.barrier.b is not None:
        cert = check(cfg.model, exps, scaling, cfg.barrier.b)
        scanned = 1
    else:
        found = feasible_b_search(cfg.model, exps, scaling, cfg.barrier.b_min,
                                  cfg.barrier.b_max, cfg.barrier.steps)
        cert, scanned = found.best, found.scanned
    report = {
        "regime": exps.regime, "status": cert.status, "b": cert.b, "B1": cert.B1,
        "B2": cert.B2, "residuals": cert.residuals, "violated": list(cert.violated),
        "reason": cert.reason, "scanned": scanned,
    }
    outputs.write_json(out / "certificate.json", report)
    say(f"regime       {exps.regime.value}",
        f"status       {cert.status.value}" + (f" ({cert.reason})" if cert.reason else ""))
    if cert.status is not Status.INAPPLICABLE:
        say(f"b            {cert.b:.6g}", f"B1, B2       {cert.B1:.6g}, {cert.B2:.6g}")
        for name, r in cert.residuals.items():
            mark = "FAIL" if name in cert.violated else "ok"
            say(f"{name:<12} {r:+.6e}  {mark}")
    return {Status.CERTIFIED: EXIT_OK, Status.VIOLATED: EXIT_VIOLATED,
            Status.INAPPLICABLE: EXIT_INAPPLICABLE}[cert.status]


def cmd_derive(cfg: RunConfig, out: Path, say) -> int:
    exps = derive_exponents(cfg.model, cfg.scaling.A1, cfg.scaling.A2)
    report = {
        "n": exps.n, "n_second": exps.n_second, "gamma1": exps.gamma1, "gamma2": exps.gamma2,
        "gamma3": exps.gamma3, "gamma4": exps.gamma4, "regime": exps.regime,
        "c1": exps.c1, "c2": exps.c2, "constants_note": exps.constants_note,
        "front_conditions": front_exponent_conditions(cfg.model, exps),
    }
    try:
        scaling = make_scaling(cfg.model, exps, cfg.scaling.A1, cfg.scaling.A2, cfg.scaling.T)
        tau0 = tau_of_t(scaling, 0.0)
        report.update(p=scaling.p, psi1=scaling.psi1, psi2=scaling.psi2,
                      tau_at_0=tau0.value, propagating=tau0.propagating)
    except ExponentZero as exc:
        report.update(p=0.0, psi1=None, psi2=None, scaling_note=str(exc))
    outputs.write_json(out / "derived.json", report)
    for key in ("n", "gamma1", "gamma2", "gamma3", "gamma4", "c1", "c2", "p", "psi1", "psi2"):
        value = report.get(key)
        say(f"{key:<8} {'n/a' if value is None else format(value, '.10g')}")
    say(f"regime   {exps.regime.value}")
    return EXIT_OK


def _profile(cfg: RunConfig):
    exps, scaling = _derived(cfg)
    p = cfg.profile
    prof = integrate_profile(cfg.model, (scaling.psi1, scaling.psi2), cfg.radial_bc(),
                             h0=p.h0, eps_front=p.eps_front, A_ratio=scaling.A_ratio)
    return exps, scaling, prof


def cmd_profile(cfg: RunConfig, out: Path, say) -> int:
    try:
        exps, scaling, prof = _profile(cfg)
    except ExponentZero as exc:
        say(f"inapplicable: {exc}")
        return EXIT_INAPPLICABLE
    outputs.write_csv(out / "profile.csv", ("xi", "f1", "f2"), (prof.xi, prof.f1, prof.f2))
    report = {"d1": prof.d1, "d2": prof.d2, "gamma1": exps.gamma1, "gamma2": exps.gamma2}
    try:
        fits = front_fit(prof, cfg.profile.window_fraction)
        for i, fit in enumerate(fits, 1):
            report[f"fit{i}"] = {"b_est": fit.b_est, "gamma_est": fit.gamma_est,
                                 "c_est": fit.c_est, "points": fit.points}
    except AmmoniaRDError as exc:
        report["fit_error"] = str(exc)
    outputs.write_json(out / "front_fit.json", report)
    say(f"fronts   d1 = {prof.d1:.10g}, d2 = {prof.d2:.10g}")
    for i in (1, 2):
        fit = report.get(f"fit{i}")
        if fit:
            say(f"fit{i}     gamma_est = {fit['gamma_est']:.6g} (gamma{i} = "
                f"{report[f'gamma{i}']:.6g}), c_est = {fit['c_est']:.6g}")
    return EXIT_OK


def cmd_asymptotics(cfg: RunConfig, out: Path, say) -> int:
    try:
        exps, scaling, prof = _profile(cfg)
    except ExponentZero as exc:
        say(f"inapplicable: {exc}")
        return EXIT_INAPPLICABLE
    if exps.c1 is None:
        say(f"inapplicable: {exps.constants_note}")
        return EXIT_INAPPLICABLE
    xi = prof.xi
    cols = [xi]
    for i, (f, d) in enumerate(((prof.f1, prof.d1), (prof.f2, prof.d2))):
        if exps.regime is Regime.SLOW:
            if not math.isfinite(d):
                say(f"component {i + 1} has no finite front")
                return EXIT_NUMERIC
            inside = xi <= d
            fa = np.zeros_like(xi)
            fa[inside] = asymptotic_profile(exps, exps.c1, exps.c2, d * d, exps.regime, xi[inside])[i]
        else:
            b = cfg.barrier.b if cfg.barrier.b is not None else 1.0
            fa = asymptotic_profile(exps, exps.c1, exps.c2, b, exps.regime, xi)[i]
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(fa > 0, f / np.where(fa > 0, fa, 1.0), np.nan)
        cols += [f, fa, ratio]
    outputs.write_csv(out / "asymptotics.csv",
                      ("xi", "f1", "f1A", "ratio1", "f2", "f2A", "ratio2"), cols)
    say(f"wrote {len(xi)} rows; c1 = {exps.c1:.10g}, c2 = {exps.c2:.10g}")
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, out: Path, say) -> int:
    rows = []
    for m in cfg.sweep.m:
        for sigma in cfg.sweep.sigma:
            raw = cfg.model.replace(m1=m, m2=m, sigma1=sigma, sigma2=sigma)
            row = [m, sigma]
            try:
                model = validate_model(raw)
                exps = derive_exponents(model, cfg.scaling.A1, cfg.scaling.A2)
                scaling = make_scaling(model, exps, cfg.scaling.A1, cfg.scaling.A2, cfg.scaling.T)
                found = feasible_b_search(model, exps, scaling, cfg.barrier.b_min,
                                          cfg.barrier.b_max, cfg.barrier.steps)
                row += [exps.gamma1, exps.gamma3, exps.regime.value, found.best.status.value,
                        exps.c1, exps.c2]
            except (InvalidModel, ExponentZero, AmmoniaRDError) as exc:
                row += [None, None, "invalid", type(exc).__name__, None, None]
            rows.append(row)
    header = ("m", "sigma", "gamma", "gamma3", "regime", "status", "c1", "c2")
    outputs.atomic_write(out / "regime_map.csv", outputs.csv_text(header, rows))
    say(f"wrote {len(rows)} parameter points to {out / 'regime_map.csv'}")
    return EXIT_OK


_PLOT_SERIES = '''"""Plot masses, conversions and rates from series.csv (needs matplotlib)."""
import numpy as np
import matplotlib.pyplot as plt

d = np.genfromtxt("series.csv", delimiter=",", names=True)
fig, ax = plt.subplots(1, 3, figsize=(13, 4))
ax[0].plot(d["t"], d["mass_u"], label="u"); ax[0].plot(d["t"], d["mass_v"], label="v")
ax[0].set_xlabel("t [s]"); ax[0].set_ylabel("total mass [mol]"); ax[0].legend()
ax[1].plot(d["t"], d["conv_u"], label="u"); ax[1].plot(d["t"], d["conv_v"], label="v")
ax[1].set_xlabel("t [s]"); ax[1].set_ylabel("conversion [%]"); ax[1].legend()
ax[2].plot(d["t"], d["rate_u"], label="u"); ax[2].plot(d["t"], d["rate_v"], label="v")
ax[2].set_xlabel("t [s]"); ax[2].set_ylabel("rate [mol/s]"); ax[2].legend()
fig.tight_layout()
fig.savefig("series.png", dpi=150)
'''

_PLOT_SECTIONS = '''"""Plot y = 0 cross-sections from cross_sections.csv (needs matplotlib)."""
import numpy as np
import matplotlib.pyplot as plt

d = np.genfromtxt("cross_sections.csv", delimiter=",", names=True)
fig, ax = plt.subplots(1, 2, figsize=(10, 4))
for t in np.unique(d["t"]):
    sel = d["t"] == t
    ax[0].plot(d["x"][sel], d["u"][sel], label=f"t = {t:g} s")
    ax[1].plot(d["x"][sel], d["v"][sel], label=f"t = {t:g} s")
ax[0].set_title("u"); ax[1].set_title("v")
for a in ax:
    a.set_xlabel("x [m]"); a.legend(fontsize=7)
fig.tight_layout()
fig.savefig("cross_sections.png", dpi=150)
'''


def cmd_simulate(cfg: RunConfig, out: Path, say) -> int:
    grid = cfg.grid2d()
    init = cfg.initial
    start = initial_bumps(grid, init.u0, init.v0, init.radius_fraction, init.power)
    res = run_simulation(cfg.model, grid, cfg.solver_config(), start)
    s = res.series
    outputs.write_csv(out / "series.csv", SERIES_HEADER, s.columns())
    sect_rows = []
    fronts = []
    for snap in res.snapshots:
        outputs.atomic_write(out / outputs.snapshot_name("u", snap.t), outputs.grid_text(snap.u))
        outputs.atomic_write(out / outputs.snapshot_name("v", snap.t), outputs.grid_text(snap.v))
        x, cu = cross_section(snap.u, grid)
        _, cv = cross_section(snap.v, grid)
        sect_rows += [(snap.t, xi, a, b) for xi, a, b in zip(x, cu, cv)]
        fronts.append({"t": snap.t, "u": front_radius(snap.u, grid, 1e-6),
                       "v": front_radius(snap.v, grid, 1e-6)})
    outputs.atomic_write(out / "cross_sections.csv", outputs.csv_text(("t", "x", "u", "v"), sect_rows))
    summary = {
        "failed": res.failed, "error": res.error, "steps": len(s.t) - 1,
        "final_t": float(s.t[-1]), "conv_u": float(s.conv_u[-1]), "conv_v": float(s.conv_v[-1]),
        "dt": res.advisory.dt, "dt_explicit_limit": res.advisory.dt_limit,
        "dt_exceeds_explicit_limit": res.advisory.exceeded, "front_radius": fronts,
    }
    outputs.write_json(out / "summary.json", summary)
    if cfg.output.emit_plots:
        outputs.atomic_write(out / "plot_series.py", _PLOT_SERIES)
        outputs.atomic_write(out / "plot_sections.py", _PLOT_SECTIONS)
    say(f"t = {s.t[-1]:g} s: conversion u = {s.conv_u[-1]:.3f} %, v = {s.conv_v[-1]:.3f} %",
        f"dt = {res.advisory.dt:g} s (explicit bound {res.advisory.dt_limit:.3g} s)")
    if res.failed:
        say(f"solver failed: {res.error}")
        return EXIT_NUMERIC
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "derive": cmd_derive,
    "profile": cmd_profile,
    "simulate": cmd_simulate,
    "asymptotics": cmd_asymptotics,
    "sweep": cmd_sweep,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON run configuration")
    common.add_argument("--out", default=argparse.SUPPRESS, help="output directory")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
    parser = _Parser(prog="ammonia-rd", parents=[common],
                     description="Similarity analysis and ADI simulation of the ammonia reaction-diffusion model.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, fn in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=(fn.__doc__ or "").strip() or None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    quiet = getattr(args, "quiet", False)
    logging.basicConfig(level=logging.ERROR if quiet else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    say = _Reporter(quiet)
    config = getattr(args, "config", None)
    if config is None:
        print("ammonia-rd: error: --config is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = parse_config(config)
    except (ConfigError, OSError) as exc:
        print(f"ammonia-rd: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = Path(getattr(args, "out", None) or cfg.output.directory)
    try:
        return COMMANDS[args.command](cfg, out, say)
    except Inapplicable as exc:
        print(f"ammonia-rd: inapplicable: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except AmmoniaRDError as exc:
        print(f"ammonia-rd: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

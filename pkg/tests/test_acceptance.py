"""Acceptance criteria, one verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also collected into an "acceptance criteria" section at the end of
every pytest run that includes this module.
"""
import csv
import filecmp
import json
import math
import time

import numpy as np
import pytest

from ammonia_rd import cli
from ammonia_rd.config import bundled_config_path
from ammonia_rd.existence import Status, check_slow, feasible_b_search
from ammonia_rd.grid import Grid2D
from ammonia_rd.model import (ModelParams, Regime, asymptotic_constants, derive_exponents,
                              validate_model)
from ammonia_rd.observables import total_mass
from ammonia_rd.pde import FieldPair, SolverConfig, adi_step, initial_bumps, run_simulation
from ammonia_rd.radial import RadialBC, RadialProfile, asymptotic_profile, front_fit, integrate_profile
from ammonia_rd.similarity import comparison_field, make_scaling, tau_of_t
from ammonia_rd.tridiag import thomas_solve

from conftest import model, record

SUBCOMMANDS = ("check", "derive", "profile", "simulate", "asymptotics", "sweep")


def _read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


@pytest.fixture(scope="module")
def baseline_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("baseline")
    start = time.perf_counter()
    code = cli.main(["--config", str(bundled_config_path()), "--out", str(out), "--quiet", "simulate"])
    elapsed = time.perf_counter() - start
    header, data = _read_csv(out / "series.csv")
    series = dict(zip(header, data.T))
    summary = json.loads((out / "summary.json").read_text())
    return code, elapsed, series, summary, out


def test_c01_baseline_conversions(baseline_run):
    code, elapsed, series, _, _ = baseline_run
    cu, cv = series["conv_u"][-1], series["conv_v"][-1]
    ok = (code == 0 and abs(cu - 20.0) <= 5.0 and abs(cv - 30.0) <= 5.0 and elapsed <= 60.0)
    record(1, "conversions at t = 10 s near 20 % (u) and 30 % (v)", ok,
           f"u {cu:.2f} %, v {cv:.2f} %, {elapsed:.1f} s")
    assert ok


def test_c02_limiting_reactant(baseline_run):
    _, _, series, _, out = baseline_run
    ok = bool(np.all(series["conv_v"] >= series["conv_u"]))
    record(2, "conv_v >= conv_u at every recorded time", ok,
           f"min gap {np.min(series['conv_v'] - series['conv_u']):.3g}")
    assert ok


def test_c03_rate_monotone(baseline_run):
    _, _, series, _, _ = baseline_run
    worst = -math.inf
    for key in ("rate_u", "rate_v"):
        r = series[key]
        worst = max(worst, float(np.max((r[1:] - r[:-1]) / np.abs(r[:-1]))))
    ok = worst <= 1e-10
    record(3, "rate_u and rate_v non-increasing", ok, f"largest relative rise {worst:.3g}")
    assert ok


HEAT = ModelParams(D1=1.0, D2=1.0, m1=0.0, m2=0.0, sigma1=0.0, sigma2=0.0, a1=0.0, a2=0.0,
                   alpha1=2.0, beta1=0.0, alpha2=0.0, beta2=2.0, N=2)
T0 = 0.01


def _gaussian(grid, t):
    # fundamental solution of u_t = Laplacian u, shifted to t0
    return T0 / (T0 + t) * np.exp(-grid.radius() ** 2 / (4.0 * (T0 + t)))


def _heat_error(n, steps, t_end=0.0125):
    grid = Grid2D(1.0, 1.0, n, n)
    cfg = SolverConfig(dt=t_end / steps, t_end=t_end)
    state = FieldPair(_gaussian(grid, 0.0), _gaussian(grid, 0.0))
    for _ in range(steps):
        state = adi_step(state, HEAT, grid, cfg)
    exact = _gaussian(grid, t_end)
    return float(np.max(np.abs(state.u - exact)) / np.max(exact))


def test_c04_linear_heat_oracle():
    fine = _heat_error(101, 50)
    coarse = _heat_error(51, 25)
    ratio = coarse / fine
    ok = fine <= 1e-2 and ratio >= 3.5
    record(4, "ADI vs Gaussian heat kernel", ok, f"L-inf rel {fine:.3g}, ratio {ratio:.2f}")
    assert ok


def _face_flux_divergence(w, D, m, sigma, h):
    pos = np.where(w > 0, w, 0.0)
    ws = pos ** sigma
    kx = 0.5 * (ws[:, 1:] + ws[:, :-1])
    ky = 0.5 * (ws[1:, :] + ws[:-1, :])
    fx = kx * (w[:, 1:] - w[:, :-1])
    fy = ky * (w[1:, :] - w[:-1, :])
    div = np.zeros_like(w)
    div[:, 1:-1] += fx[:, 1:] - fx[:, :-1]
    div[1:-1, :] += fy[1:, :] - fy[:-1, :]
    return D * (pos ** m if m else 1.0) * div / (h * h)


def _explicit_reference(mod, grid, u, v, dt, steps):
    for _ in range(steps):
        pu, pv = np.maximum(u, 0.0), np.maximum(v, 0.0)
        du = (_face_flux_divergence(u, mod.D1, mod.m1, mod.sigma1, grid.dx)
              - mod.a1 * pu ** mod.alpha1 * pv ** mod.beta1)
        dv = (_face_flux_divergence(v, mod.D2, mod.m2, mod.sigma2, grid.dx)
              - mod.a2 * pu ** mod.alpha2 * pv ** mod.beta2)
        u, v = u + dt * du, v + dt * dv
        for w in (u, v):
            w[0, :] = w[-1, :] = w[:, 0] = w[:, -1] = 0.0
    return u, v


def test_c05_nonlinear_oracle():
    mod = model()
    grid = Grid2D(1.0, 1.0, 41, 41)
    start = initial_bumps(grid)
    dt = 0.1
    ref_u, ref_v = _explicit_reference(mod, grid, start.u.copy(), start.v.copy(), dt / 1000, 10_000)
    cfg = SolverConfig(dt=dt, t_end=10 * dt)
    state = start
    for _ in range(10):
        state = adi_step(state, mod, grid, cfg)
    dev = max(np.max(np.abs(state.u - ref_u)) / np.max(ref_u),
              np.max(np.abs(state.v - ref_v)) / np.max(ref_v))
    ok = dev <= 0.02
    record(5, "nonlinear ADI vs explicit Euler at dt/1000", ok, f"max rel deviation {dev:.3g}")
    assert ok


def test_c06_thomas_exactness():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(3, 513))
        lower, upper = rng.uniform(-1, 1, n), rng.uniform(-1, 1, n)
        lower[0] = upper[-1] = 0.0
        diag = (np.abs(lower) + np.abs(upper) + rng.uniform(0.1, 2.0, n)) * rng.choice([-1, 1], n)
        rhs = rng.normal(size=n)
        dense = np.diag(diag) + np.diag(lower[1:], -1) + np.diag(upper[:-1], 1)
        ref = np.linalg.solve(dense, rhs)
        x = thomas_solve(lower, diag, upper, rhs)
        worst = max(worst, float(np.linalg.norm(x - ref) / np.linalg.norm(ref)))
    ok = worst <= 1e-12
    record(6, "Thomas vs dense solve, 200 draws", ok, f"worst relative error {worst:.3g}")
    assert ok


def test_c07_exponent_identities():
    rng = np.random.default_rng(7)
    worst = 0.0
    done = 0
    while done < 1000:
        k = rng.uniform(-4, 4)
        r = rng.uniform(-3, 3)
        if abs(k) < 1e-3 or abs(r) < 1e-3:
            continue
        m1, m2 = rng.uniform(-2, 3, 2)
        a1, a2 = rng.uniform(-2, 3, 2)
        raw = ModelParams(D1=rng.uniform(0.1, 5), D2=rng.uniform(0.1, 5), m1=m1, m2=m2,
                          sigma1=k - m1, sigma2=k - m2, a1=rng.uniform(0, 1), a2=rng.uniform(0, 1),
                          alpha1=a1, beta1=r + 1 - a1, alpha2=a2, beta2=r + 1 - a2,
                          N=int(rng.integers(1, 4)))
        exps = derive_exponents(validate_model(raw))
        worst = max(worst, abs(exps.gamma1 * raw.k1 - 1), abs(exps.gamma2 * raw.k2 - 1),
                    abs(exps.n - exps.n_second))
        done += 1
    ok = worst <= 1e-12
    record(7, "gamma_i (m_i + sigma_i) = 1 and both n agree, 1000 sets", ok, f"worst {worst:.3g}")
    assert ok


# slow parameter sets whose reaction strength puts psi at -N/(2(1-m)), the
# value for which the reduced radial equation has a sharp power-law front.
# The cross reaction term is smaller than the linear one by f^(alpha+beta-1),
# so orders summing well above 1 keep it out of the fit window.
FRONT_SETS = (
    dict(m=0.0, sigma=1.5, N=1, alpha=1.5, beta=0.5),
    dict(m=0.0, sigma=1.0, N=2, alpha=1.5, beta=0.4),
    dict(m=0.5, sigma=1.5, N=1, alpha=1.5, beta=0.5),
)


def _front_model(m, sigma, N, alpha, beta):
    k = m + sigma
    n = -1.0 / (alpha + beta - 1)
    psi = -N / (2.0 * (1.0 - m))
    a = psi * (n * k + 1)  # A1 = A2 = 1 so psi = a / p
    return validate_model(ModelParams(D1=1.0, D2=1.0, m1=m, m2=m, sigma1=sigma, sigma2=sigma,
                                      a1=a, a2=a, alpha1=alpha, beta1=beta, alpha2=beta,
                                      beta2=alpha, N=N))


def test_c08_front_asymptotics():
    notes, ok = [], True
    for spec in FRONT_SETS:
        mod = _front_model(**spec)
        exps = derive_exponents(mod)
        s = make_scaling(mod, exps)
        prof = integrate_profile(mod, (s.psi1, s.psi2), RadialBC(M1=1e-4, M2=5e-5))
        target = 1.0 / (spec["m"] + spec["sigma"])
        for fit in front_fit(prof):
            rel = abs(fit.gamma_est - target) / target
            ok &= rel <= 0.05
            notes.append(f"{fit.gamma_est:.4f}/{target:.4f}")

    exps = derive_exponents(model())
    b, xi = 2.5, np.linspace(0.0, math.sqrt(2.5), 2001)[:-1]
    f1, f2 = asymptotic_profile(exps, 3.0, 7.0, b, Regime.SLOW, xi)
    synthetic = RadialProfile(xi, f1, f2, math.sqrt(b), math.sqrt(b))
    for fit, c in zip(front_fit(synthetic), (3.0, 7.0)):
        ok &= (abs(fit.b_est - b) <= 1e-6 and abs(fit.gamma_est - exps.gamma1) <= 1e-6
               and abs(fit.c_est - c) <= 1e-6 * c)

    # oracle: (1/(4 D gamma3))^gamma with gamma = gamma3 = 2/3
    c1_oracle = (1.0 / (4 * 3e-5 * (2.0 / 3.0))) ** (2.0 / 3.0)
    c2_oracle = (1.0 / (4 * 1e-5 * (2.0 / 3.0))) ** (2.0 / 3.0)
    c1, c2 = asymptotic_constants(exps, 3e-5, 1e-5)
    for got, printed, oracle in ((c1, 538.6086725, c1_oracle), (c2, 1120.3511866, c2_oracle)):
        ok &= abs(got - printed) <= 1e-9 * printed and abs(got - oracle) <= 1e-12 * oracle
    notes.append(f"c1 {c1:.7f}, c2 {c2:.7f}")
    record(8, "front exponents, fit self-consistency, c1/c2", ok, "; ".join(notes))
    assert ok


CERTIFIED = dict(D1=1.0, D2=1.0, m1=2.0, m2=2.0, sigma1=0.0, sigma2=0.0, a1=1.0, a2=0.05,
                 alpha1=3.0, beta1=2.0, alpha2=2.0, beta2=3.0, N=2)


def _super_residuals(mod, spec, s, t, point, h=1e-4):
    def w(tt, p):
        return np.array(comparison_field(spec, s, tt, p))

    here = w(t, point)
    dt = (w(t + h, point) - w(t - h, point)) / (2 * h) if t > h else (w(t + h, point) - here) / h
    lap = sum(w(t, point + h * e) + w(t, point - h * e) - 2 * here for e in np.eye(2)) / h ** 2
    u, v = here
    # sigma = 0 here, so the diffusion term is D w^m times the plain Laplacian
    r1 = dt[0] - mod.D1 * u ** mod.m1 * lap[0] + mod.a1 * u ** mod.alpha1 * v ** mod.beta1
    r2 = dt[1] - mod.D2 * v ** mod.m2 * lap[1] + mod.a2 * u ** mod.alpha2 * v ** mod.beta2
    return r1, r2


def test_c09_comparison_principle():
    base = model()
    base_exps = derive_exponents(base)
    verdict = feasible_b_search(base, base_exps, make_scaling(base, base_exps)).best.status
    ok = verdict is Status.INAPPLICABLE

    mod = validate_model(ModelParams(**CERTIFIED))
    exps = derive_exponents(mod)
    s = make_scaling(mod, exps)
    cert = check_slow(mod, exps, s, 3.0)
    ok &= cert.status is Status.CERTIFIED
    spec = cert.barrier(exps)

    grid = Grid2D(4.0, 4.0, 101, 101)
    X, Y = grid.mesh()
    pts = np.stack([X, Y], axis=-1)
    w1, w2 = comparison_field(spec, s, 0.0, pts)
    cfg = SolverConfig(dt=0.01, t_end=1.0, save_every=10)
    res = run_simulation(mod, grid, cfg, FieldPair(0.9 * w1, 0.9 * w2))
    ok &= not res.failed
    worst = -math.inf
    for snap in res.snapshots:
        c1, c2 = comparison_field(spec, s, snap.t, pts)
        # first-order grid slack: one cell's worth of barrier slope
        slack1 = 1e-6 + grid.dx * np.max(np.abs(np.gradient(c1, grid.dx)))
        slack2 = 1e-6 + grid.dx * np.max(np.abs(np.gradient(c2, grid.dx)))
        worst = max(worst, float(np.max(snap.u - c1) - slack1), float(np.max(snap.v - c2) - slack2))
    ok &= worst <= 0.0

    rng = np.random.default_rng(9)
    min_res = math.inf
    for _ in range(100):
        t = rng.uniform(0.0, 1.0)
        radius = math.sqrt(spec.b * tau_of_t(s, t).value)
        r, th = rng.uniform(0.0, 0.9 * radius), rng.uniform(0.0, 2 * math.pi)
        point = np.array([r * math.cos(th), r * math.sin(th)])
        min_res = min(min_res, *_super_residuals(mod, spec, s, t, point))
    ok &= min_res >= 0.0
    record(9, "comparison ordering and super-solution residual signs", ok,
           f"default-parameter verdict {verdict.value}; max excess {worst:.3g}; "
           f"min residual {min_res:.3g}")
    assert ok


def test_c10_mass_conservation():
    mod = model(a1=0.0, a2=0.0)
    grid = Grid2D(1.0, 1.0, 201, 201)
    start = initial_bumps(grid, radius_fraction=0.4)
    res = run_simulation(mod, grid, SolverConfig.from_steps(10.0, 101), start)
    drift = max(abs(res.series.mass_u[-1] / res.series.mass_u[0] - 1),
                abs(res.series.mass_v[-1] / res.series.mass_v[0] - 1))
    ok = not res.failed and drift <= 0.005
    record(10, "mass conserved without reaction", ok, f"relative drift {drift:.3g}")
    assert ok


def test_c11_determinism(tmp_path):
    config = str(bundled_config_path())
    mismatched = []
    for command in SUBCOMMANDS:
        dirs = [tmp_path / f"{command}_{i}" for i in range(2)]
        codes = [cli.main(["--config", config, "--out", str(d), "--quiet", command]) for d in dirs]
        if codes[0] != codes[1]:
            mismatched.append(f"{command}: exit codes {codes}")
        cmp = filecmp.dircmp(dirs[0], dirs[1])
        names = sorted(p.name for p in dirs[0].iterdir())
        if cmp.left_only or cmp.right_only or not names:
            mismatched.append(f"{command}: file sets differ")
        _, bad, errs = filecmp.cmpfiles(dirs[0], dirs[1], names, shallow=False)
        if bad or errs:
            mismatched.append(f"{command}: {bad + errs}")
    ok = not mismatched
    record(11, "byte-identical outputs across reruns", ok, "; ".join(mismatched) or "6 subcommands")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))

"""Peaceman-Rachford ADI solver for the 2D reaction-diffusion system.

Per direction the operator ``D w^m d/dx(w^sigma dw/dx)`` is discretised as

    D w_P^m [k_e (w_E - w_P) - k_w (w_P - w_W)] / dx^2,
    k_face = (w_P^sigma + w_nb^sigma) / 2,

with ``w^m`` and the face coefficients frozen at the previous Picard iterate.
The sinks are linearised as ``a1 u_lag^(alpha1-1) v_lag^beta1 * u_new`` (and
symmetrically for ``v``) and enter the implicit diagonal, which keeps every
tridiagonal matrix an M-matrix.  Boundaries hold zero (Dirichlet).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import AmmoniaRDError, NonFiniteField
from .grid import Grid2D
from .model import ModelParams
from .observables import TimeSeries, build_series, total_mass
from .tridiag import thomas_solve

log = logging.getLogger(__name__)

DEFAULT_FLOOR = 1e-12


@dataclass
class FieldPair:
    u: np.ndarray
    v: np.ndarray

    def copy(self) -> "FieldPair":
        return FieldPair(self.u.copy(), self.v.copy())


@dataclass(frozen=True)
class SolverConfig:
    dt: float
    t_end: float
    eps_floor: float = DEFAULT_FLOOR
    picard_iters: int = 1
    save_every: int = 10

    def __post_init__(self):
        if not (self.dt > 0 and self.t_end > 0):
            raise ValueError("dt and t_end must be positive")
        if self.eps_floor < 0:
            raise ValueError("eps_floor must be non-negative")
        if self.picard_iters < 1 or self.save_every < 1:
            raise ValueError("picard_iters and save_every must be >= 1")

    @classmethod
    def from_steps(cls, t_end: float, steps: int = 101, **kw) -> "SolverConfig":
        """``steps`` time levels including t = 0, i.e. ``steps - 1`` advances."""
        if steps < 2:
            raise ValueError("need at least two time levels")
        return cls(dt=t_end / (steps - 1), t_end=t_end, **kw)

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))


class _Species(NamedTuple):
    D: float
    m: float
    sigma: float


def _species(model: ModelParams):
    return (_Species(model.D1, model.m1, model.sigma1),
            _Species(model.D2, model.m2, model.sigma2))


def floored_power(w, e, floor):
    """``w**e`` with zero exponent giving 1 and sub-floor bases giving 0."""
    if e == 0:
        return np.ones_like(w)
    out = np.zeros_like(w)
    pos = w > floor
    out[pos] = w[pos] ** e
    return out


def _coeffs(lag, sp, h, floor):
    """West/east couplings along the last axis at interior columns."""
    pm = floored_power(lag, sp.m, floor)[..., 1:-1]
    ps = floored_power(lag, sp.sigma, floor)
    kf = 0.5 * (ps[..., 1:] + ps[..., :-1])
    scale = sp.D * pm / (h * h)
    return scale * kf[..., :-1], scale * kf[..., 1:]


def _apply(w, west, east):
    """Discrete operator along the last axis, interior columns only."""
    mid = w[..., 1:-1]
    return east * (w[..., 2:] - mid) + west * (w[..., :-2] - mid)


def _sinks(model, u, v, floor):
    su = model.a1 * floored_power(u, model.alpha1 - 1, floor) * floored_power(v, model.beta1, floor)
    sv = model.a2 * floored_power(u, model.alpha2, floor) * floored_power(v, model.beta2 - 1, floor)
    return su, sv


def _half_step(olds, lags, model, h_impl, h_expl, half_dt, floor, transpose):
    """One implicit sweep along the last axis of each (possibly transposed) field."""
    su, sv = _sinks(model, lags[0], lags[1], floor)
    out = []
    for w, lag, s, sp in zip(olds, lags, (su, sv), _species(model)):
        if transpose:
            w, lag, s = w.T, lag.T, s.T
        west, east = _coeffs(lag, sp, h_impl, floor)
        west_o, east_o = _coeffs(lag.T, sp, h_expl, floor)
        explicit = _apply(w.T, west_o, east_o).T[:, 1:-1]
        rhs = w[1:-1, 1:-1] + half_dt * explicit
        wi, ei = west[1:-1], east[1:-1]
        diag = 1.0 + half_dt * (s[1:-1, 1:-1] + wi + ei)
        interior = thomas_solve(-half_dt * wi, diag, -half_dt * ei, rhs)
        new = np.zeros_like(w)
        new[1:-1, 1:-1] = interior
        out.append(new.T if transpose else new)
    return out


def adi_step(state: FieldPair, model: ModelParams, grid: Grid2D, cfg: SolverConfig) -> FieldPair:
    """Advance both species by ``cfg.dt``: x-implicit half step, then y-implicit."""
    floor = cfg.eps_floor
    half = 0.5 * cfg.dt
    olds = (state.u, state.v)
    lags = olds
    for _ in range(cfg.picard_iters):
        mid = _half_step(olds, lags, model, grid.dx, grid.dy, half, floor, transpose=False)
        lags = mid
    lags = mid
    for _ in range(cfg.picard_iters):
        new = _half_step(mid, lags, model, grid.dy, grid.dx, half, floor, transpose=True)
        lags = new
    u, v = (np.maximum(w, 0.0) for w in new)
    for w in (u, v):
        if not np.all(np.isfinite(w)):
            raise NonFiniteField("non-finite value after ADI step")
        w[0, :] = w[-1, :] = 0.0
        w[:, 0] = w[:, -1] = 0.0
    return FieldPair(u, v)


class Advisory(NamedTuple):
    dt: float
    dt_limit: float
    exceeded: bool


def stability_guard(model: ModelParams, grid: Grid2D, cfg: SolverConfig,
                    state: FieldPair) -> Advisory:
    """Compare ``dt`` with the explicit-scheme bound ``1/(2 Dmax (1/dx^2 + 1/dy^2))``.

    The ADI scheme does not need this bound; exceeding it only means the
    explicit half of each sweep may lose positivity or accuracy.  Logs a
    warning, never raises.
    """
    dmax = 0.0
    for w, sp in zip((state.u, state.v), _species(model)):
        eff = sp.D * floored_power(w, sp.m, cfg.eps_floor) * floored_power(w, sp.sigma, cfg.eps_floor)
        dmax = max(dmax, float(eff.max()))
    limit = math.inf if dmax == 0 else 1.0 / (2.0 * dmax * (grid.dx ** -2 + grid.dy ** -2))
    exceeded = cfg.dt > limit
    if exceeded:
        log.warning("dt = %g exceeds the explicit stability bound %g", cfg.dt, limit)
    return Advisory(cfg.dt, limit, exceeded)


def initial_bumps(grid: Grid2D, u0: float = 31.0, v0: float = 10.0,
                  radius_fraction: float = 0.6, power: float = 1.5) -> FieldPair:
    """Compactly supported bumps ``c0 (1 - r^2/R^2)_+^power`` with ``R = radius_fraction*Lx``."""
    R = radius_fraction * grid.Lx
    shape = np.maximum(1.0 - grid.radius() ** 2 / R ** 2, 0.0) ** power
    u, v = u0 * shape, v0 * shape
    for w in (u, v):
        w[0, :] = w[-1, :] = 0.0
        w[:, 0] = w[:, -1] = 0.0
    return FieldPair(u, v)


class Snapshot(NamedTuple):
    t: float
    u: np.ndarray
    v: np.ndarray


@dataclass
class SimulationResult:
    series: TimeSeries
    snapshots: list = field(default_factory=list)
    final: FieldPair | None = None
    advisory: Advisory | None = None
    failed: bool = False
    error: str = ""

    @property
    def t(self) -> np.ndarray:
        return self.series.t


def run_simulation(model: ModelParams, grid: Grid2D, cfg: SolverConfig,
                   initial: FieldPair) -> SimulationResult:
    """March to ``cfg.t_end``, recording masses every step and fields every ``save_every``.

    A solver error stops the march; the partial result is returned with
    ``failed`` set.
    """
    for w in (initial.u, initial.v):
        if w.shape != grid.shape:
            raise ValueError(f"initial field shape {w.shape} does not match {grid.shape}")
        if np.any(w < 0):
            raise ValueError("initial concentrations must be non-negative")
    state = initial.copy()
    advisory = stability_guard(model, grid, cfg, state)
    times = [0.0]
    mu, mv = [total_mass(state.u, grid)], [total_mass(state.v, grid)]
    snaps = [Snapshot(0.0, state.u.copy(), state.v.copy())]
    failed, error = False, ""
    n = cfg.n_steps
    for step in range(1, n + 1):
        try:
            state = adi_step(state, model, grid, cfg)
        except AmmoniaRDError as exc:
            failed, error = True, f"{type(exc).__name__} at step {step}: {exc}"
            log.error(error)
            break
        t = step * cfg.dt
        times.append(t)
        mu.append(total_mass(state.u, grid))
        mv.append(total_mass(state.v, grid))
        if step % cfg.save_every == 0 or step == n:
            snaps.append(Snapshot(t, state.u.copy(), state.v.copy()))
    if len(times) >= 3:
        series = build_series(times, mu, mv)
    else:
        nan = np.full(len(times), np.nan)
        series = TimeSeries(np.array(times), np.array(mu), np.array(mv), nan, nan, nan, nan)
    return SimulationResult(series, snaps, state, advisory, failed, error)

"""Radial similarity profiles: the reduced ODE system and its front laws.

Each profile solves

    D_i f^m_i xi^(1-N) (xi^(N-1) f^sigma_i f')' + c_i (xi/2) f'
        - psi_i (f1^alpha_i f2^beta_i + f_i) = 0,

with ``c_1 = 1`` and ``c_2 = (A1/A2)^(sigma1+m1)``.  Profiles are shot
outward from the centre; a component whose value reaches the front floor is
clamped to zero and its support radius recorded.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import RK45, OdeSolution

from .errors import (
    DegenerateState,
    DomainError,
    InsufficientPoints,
    NonFiniteState,
    StepUnderflow,
)
from .model import DerivedExponents, ModelParams, Regime

DEFAULT_FLOOR = 1e-10
RTOL = 1e-8
ATOL = 1e-12


class BCKind(str, enum.Enum):
    COMPACT = "compact"
    DECAY = "decay"


@dataclass(frozen=True)
class RadialBC:
    kind: BCKind = BCKind.COMPACT
    M1: float = 1.0
    M2: float = 1.0
    xi_max: float = 10.0

    def __post_init__(self):
        if self.M1 < 0 or self.M2 < 0:
            raise ValueError("centre values must be non-negative")
        if self.kind is BCKind.DECAY and not (self.xi_max > 0 and self.M1 > 0 and self.M2 > 0):
            raise ValueError("decay conditions need positive centre values and xi_max")


@dataclass
class RadialProfile:
    xi: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    d1: float = math.inf
    d2: float = math.inf
    g1: np.ndarray | None = None
    g2: np.ndarray | None = None
    _dense: OdeSolution | None = field(default=None, repr=False)

    @property
    def fronts(self) -> tuple[float, float]:
        return self.d1, self.d2

    def __call__(self, xi_values):
        """Dense evaluation ``(f1, f2)`` at arbitrary ``xi`` inside the grid."""
        x = np.asarray(xi_values, dtype=float)
        if self._dense is None:
            f1 = np.interp(x, self.xi, self.f1)
            f2 = np.interp(x, self.xi, self.f2)
        else:
            y = np.atleast_2d(self._dense(x).T).T
            f1, f2 = y[0], y[2]
        f1 = np.where(x >= self.d1, 0.0, np.maximum(f1, 0.0))
        f2 = np.where(x >= self.d2, 0.0, np.maximum(f2, 0.0))
        if x.ndim == 0:
            return float(np.ravel(f1)[0]), float(np.ravel(f2)[0])
        return f1, f2


def _spow(x, e):
    if x > 0:
        return x ** e
    if x == 0:
        if e > 0:
            return 0.0
        if e == 0:
            return 1.0
    raise DegenerateState(f"power {e} of non-positive value {x}")


def ode_rhs(model: ModelParams, psi1: float, psi2: float, A_ratio: float, xi: float,
            state, floor: float = DEFAULT_FLOOR) -> np.ndarray:
    """First-order form ``(f1', g1', f2', g2')`` of the radial system.

    ``g_i = f_i'``.  At ``xi = 0`` the radial Laplacian is replaced by its
    symmetric limit ``N f^sigma f''`` (valid because ``g_i(0) = 0``).  A
    component sitting exactly at ``f = g = 0`` is a front and is left at
    rest; any other state below ``floor`` raises :class:`DegenerateState`.
    """
    f1, g1, f2, g2 = (float(v) for v in state)
    N = model.N
    adv2 = A_ratio ** (model.sigma1 + model.m1)
    out = np.zeros(4)
    comps = (
        (f1, g1, model.D1, model.m1, model.sigma1, psi1, model.alpha1, model.beta1, 1.0),
        (f2, g2, model.D2, model.m2, model.sigma2, psi2, model.alpha2, model.beta2, adv2),
    )
    for i, (f, g, D, m, sig, psi, al, be, adv) in enumerate(comps):
        if f == 0.0 and g == 0.0:
            continue
        if f < floor:
            raise DegenerateState(f"f{i + 1} = {f} below floor {floor} with slope {g}")
        reaction = psi * (_spow(f1, al) * _spow(f2, be) + f)
        fk = f ** (m + sig)
        if xi == 0.0:
            fpp = reaction / (N * D * fk)
        else:
            diff = D * f ** m * (sig * f ** (sig - 1) * g * g + (N - 1) * f ** sig * g / xi)
            fpp = (reaction - adv * 0.5 * xi * g - diff) / (D * fk)
        out[2 * i] = g
        out[2 * i + 1] = fpp
    return out


def integrate_profile(model: ModelParams, psis: tuple[float, float], bc: RadialBC,
                      h0: float = 1e-4, eps_front: float = DEFAULT_FLOOR, *,
                      A_ratio: float = 1.0, rtol: float = RTOL, atol: float = ATOL,
                      front_rtol: float = 1e-6, xi_limit: float = 1e3,
                      max_steps: int = 50_000, fixed_step: float | None = None) -> RadialProfile:
    """Shoot the radial system outward from ``xi = 0``.

    Parameters
    ----------
    psis : (psi1, psi2)
        Reduced reaction coefficients.
    bc : RadialBC
        Compact: start at ``f_i(0) = M_i`` and detect fronts.  Decay:
        integrate to ``bc.xi_max`` without clamping.
    h0 : float
        Initial step.
    eps_front : float
        Degeneracy floor; a component at or below it is a front.
    front_rtol : float
        A component is also declared at its front once the linear
        extrapolation distance ``f/|f'|`` drops below ``front_rtol * xi``.
        Near a front ``f ~ (d - xi)^gamma`` with ``gamma < 1``, so the floor
        alone is out of reach in double precision.
    fixed_step : float, optional
        Take uniform steps of this size (no error control).  Used for
        self-convergence studies.
    """
    if not (h0 > 0 and eps_front > 0):
        raise ValueError("h0 and eps_front must be positive")
    psi1, psi2 = psis
    compact = bc.kind is BCKind.COMPACT
    x_end = xi_limit if compact else bc.xi_max
    y = np.array([bc.M1, 0.0, bc.M2, 0.0])
    fronts = [math.inf, math.inf]
    active = [True, True]
    for i, M in enumerate((bc.M1, bc.M2)):
        if M == 0:
            fronts[i], active[i] = 0.0, False
    if not any(active):
        z = np.zeros(1)
        return RadialProfile(np.zeros(1), z, z.copy(), 0.0, 0.0, z.copy(), z.copy())

    def rhs(x, state):
        try:
            return ode_rhs(model, psi1, psi2, A_ratio, x, state, eps_front)
        except DegenerateState:
            # a trial stage stepped past the front; NaN forces step rejection
            return np.full(4, np.nan)

    def make_solver(x0, y0, h):
        if fixed_step is not None:
            return RK45(rhs, x0, y0, x_end, first_step=min(fixed_step, x_end - x0),
                        max_step=fixed_step, rtol=1e3, atol=1e30)
        return RK45(rhs, x0, y0, x_end, first_step=min(h, x_end - x0), rtol=rtol, atol=atol)

    xs, ys = [0.0], [y.copy()]
    ts, interps = [0.0], []
    solver = make_solver(0.0, y, h0)
    steps = 0
    while solver.status == "running":
        message = solver.step()
        if solver.status == "failed":
            raise StepUnderflow(f"step size underflow at xi = {solver.t:.6g}: {message}")
        steps += 1
        if steps > max_steps:
            raise StepUnderflow(f"step budget of {max_steps} exhausted at xi = {solver.t:.6g}")
        x, y = solver.t, solver.y.copy()
        if not np.all(np.isfinite(y)):
            raise NonFiniteState(f"non-finite state at xi = {x:.6g}")
        interps.append(solver.dense_output())
        ts.append(x)
        clamped = False
        for i in (0, 1):
            if not active[i]:
                continue
            f, g = y[2 * i], y[2 * i + 1]
            at_front = f <= eps_front or (g < 0 and f <= -g * front_rtol * x)
            if at_front and compact:
                fronts[i] = x
                active[i] = False
                y[2 * i] = y[2 * i + 1] = 0.0
                clamped = True
            elif at_front:
                raise DegenerateState(f"f{i + 1} reached the floor at xi = {x:.6g}")
        xs.append(x)
        ys.append(y)
        if not any(active):
            break
        if clamped and solver.status == "running":
            solver = make_solver(x, y, solver.step_size or h0)

    Y = np.array(ys)
    dense = OdeSolution(np.array(ts), interps) if interps else None
    return RadialProfile(np.array(xs), Y[:, 0], Y[:, 2], fronts[0], fronts[1],
                         Y[:, 1], Y[:, 3], dense)


def asymptotic_profile(exps: DerivedExponents, c1: float, c2: float, b: float,
                       regime: Regime, xi_value):
    """Front laws ``c_i (b - xi^2)^gamma_i`` (slow) or ``c_i (b + xi^2)^gamma_i`` (fast)."""
    if not b > 0:
        raise ValueError("b must be positive")
    x = np.asarray(xi_value, dtype=float)
    sq = x * x
    if regime is Regime.SLOW:
        if np.any(x > math.sqrt(b)):
            raise DomainError("slow asymptotic law is defined only for xi <= sqrt(b)")
        base = np.maximum(b - sq, 0.0)
    elif regime is Regime.FAST:
        base = b + sq
    else:
        raise DomainError("no asymptotic law in the degenerate regime")
    f1 = c1 * base ** exps.gamma1
    f2 = c2 * base ** exps.gamma2
    if x.ndim == 0:
        return float(f1), float(f2)
    return f1, f2


@dataclass(frozen=True)
class FrontFit:
    b_est: float
    gamma_est: float
    c_est: float
    points: int


def _fit_component(xi, f, d, window_fraction, eps):
    if not math.isfinite(d) or d <= 0:
        raise InsufficientPoints("component has no finite front")
    b_est = d * d
    sel = (xi >= d * (1 - window_fraction)) & (xi < d * (1 - eps)) & (f > 0)
    if sel.sum() < 5:
        raise InsufficientPoints(f"only {int(sel.sum())} samples in the fit window")
    X = np.log(b_est - xi[sel] ** 2)
    (slope, intercept) = np.polyfit(X, np.log(f[sel]), 1)
    return FrontFit(b_est, float(slope), float(math.exp(intercept)), int(sel.sum()))


def front_fit(profile: RadialProfile, window_fraction: float = 0.3,
              eps: float = 1e-3) -> tuple[FrontFit, FrontFit]:
    """Least-squares power law ``f = c (d^2 - xi^2)^gamma`` near each front."""
    if not 0 < window_fraction < 1:
        raise ValueError("window_fraction must lie in (0, 1)")
    return (_fit_component(profile.xi, profile.f1, profile.d1, window_fraction, eps),
            _fit_component(profile.xi, profile.f2, profile.d2, window_fraction, eps))


def profile_sample(profile: RadialProfile, n: int = 400, upto: float | None = None) -> np.ndarray:
    """Uniform sample of a profile on ``[0, upto]`` from its dense output."""
    if upto is None:
        finite = [d for d in profile.fronts if math.isfinite(d)]
        upto = max(finite) if finite else float(profile.xi[-1])
    return np.linspace(0.0, min(upto, float(profile.xi[-1])), n)

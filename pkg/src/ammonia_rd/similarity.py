"""Self-similar change of variables and explicit comparison profiles.

Solutions are sought as ``u = A1 (T+t)^n w1(tau(t), x)`` (same for ``v`` with
``A2``), where

    tau(t) = A1^k (T+t)^p / p,   p = n k + 1,   k = m1 + sigma1,

and the radial variable is ``xi = |x| / sqrt(tau)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ExponentZero, NonPropagating
from .model import DerivedExponents, ModelParams

DEFAULT_T = 1.0


@dataclass(frozen=True)
class SimilarityScaling:
    A1: float
    A2: float
    T: float
    n: float
    k: float
    p: float
    psi1: float
    psi2: float

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError(f"time shift T must be positive, got {self.T}")
        if not (self.A1 > 0 and self.A2 > 0):
            raise ValueError("A1 and A2 must be positive")

    @property
    def A_ratio(self) -> float:
        return self.A1 / self.A2


class Tau(NamedTuple):
    value: float
    propagating: bool


def psi_constants(A1: float, A2: float, model: ModelParams,
                  exps: DerivedExponents) -> tuple[float, float]:
    """Reduced reaction coefficients of the similarity system."""
    p1 = exps.n * model.k1 + 1
    p2 = exps.n * model.k2 + 1
    if p1 == 0 or p2 == 0:
        raise ExponentZero("n(m_i+sigma_i)+1 vanishes; psi is undefined")
    psi1 = model.a1 * A1 ** (model.alpha1 - 1) * A2 ** model.beta1 / p1
    psi2 = (model.a2 * A1 ** (model.alpha2 + model.k1)
            * A2 ** (model.beta2 - model.k2 - 1) / p2)
    return psi1, psi2


def make_scaling(model: ModelParams, exps: DerivedExponents, A1: float = 1.0,
                 A2: float = 1.0, T: float = DEFAULT_T) -> SimilarityScaling:
    psi1, psi2 = psi_constants(A1, A2, model, exps)
    k = model.k1
    return SimilarityScaling(A1=A1, A2=A2, T=T, n=exps.n, k=k,
                             p=exps.n * k + 1, psi1=psi1, psi2=psi2)


def tau_of_t(s: SimilarityScaling, t: float) -> Tau:
    """Similarity time ``tau(t)``; ``propagating`` is False when tau <= 0.

    A non-positive tau is reported rather than raised: the formula stays
    meaningful, only the radial variable built from it does not.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if s.p == 0:
        raise ExponentZero("p = n(m1+sigma1)+1 vanishes")
    tau = s.A1 ** s.k * (s.T + t) ** s.p / s.p
    # d tau/dt = A1^k (T+t)^(p-1) > 0 for every p != 0
    return Tau(tau, bool(tau > 0))


def xi(x, tau: float):
    """Radial similarity coordinate ``|x| / sqrt(tau)``.

    A scalar ``x`` is taken as a signed radius; an array is treated as
    points with coordinates along the last axis.
    """
    if not tau > 0:
        raise NonPropagating(f"tau = {tau} <= 0, the similarity variable is imaginary")
    x = np.asarray(x, dtype=float)
    r = np.abs(x) if x.ndim == 0 else np.linalg.norm(x, axis=-1)
    out = r / np.sqrt(tau)
    return float(out) if np.ndim(out) == 0 else out


class BarrierKind(str, enum.Enum):
    SLOW_SUPER = "slow_super"
    FAST_SUB = "fast_sub"


@dataclass(frozen=True)
class BarrierSpec:
    kind: BarrierKind
    B1: float
    B2: float
    b: float
    gamma1: float
    gamma2: float

    def __post_init__(self):
        if not (self.B1 > 0 and self.B2 > 0 and self.b > 0):
            raise ValueError("B1, B2 and b must be positive")
        if self.kind is BarrierKind.SLOW_SUPER and not (self.gamma1 > 0 and self.gamma2 > 0):
            raise ValueError("slow super-solution profiles need positive exponents")
        if self.kind is BarrierKind.FAST_SUB and not (self.gamma1 < 0 and self.gamma2 < 0):
            raise ValueError("fast sub-solution profiles need negative exponents")


def _profile(B, base, gamma):
    pos = base > 0
    out = np.zeros_like(base)
    out[pos] = B * np.exp(gamma * np.log(base[pos]))
    return out


def barrier_profile(spec: BarrierSpec, xi_value):
    """Profile pair ``(f1, f2)``: ``B_i (b -+ xi^2)^gamma_i``, cut off at zero."""
    x = np.asarray(xi_value, dtype=float)
    if np.any(x < 0):
        raise ValueError("xi must be non-negative")
    sq = np.atleast_1d(x * x)
    if spec.kind is BarrierKind.SLOW_SUPER:
        base = spec.b - sq
    else:
        base = spec.b + sq
    f1 = _profile(spec.B1, base, spec.gamma1)
    f2 = _profile(spec.B2, base, spec.gamma2)
    if x.ndim == 0:
        return float(f1[0]), float(f2[0])
    return f1, f2


def comparison_field(spec: BarrierSpec, s: SimilarityScaling, t: float, x):
    """Barrier pair ``(T+t)^n f_i(xi(x, tau(t)))`` in physical variables.

    For the slow kind this is the super-solution pair, for the fast kind the
    sub-solution pair.  ``x`` follows the conventions of :func:`xi`.
    """
    tau = tau_of_t(s, t)
    z = xi(x, tau.value)
    f1, f2 = barrier_profile(spec, z)
    amp = (s.T + t) ** s.n
    return amp * f1, amp * f2

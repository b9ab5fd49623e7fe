"""Algebraic global-existence certificates for the barrier profiles.

The equality conditions fix the barrier amplitudes ``B1, B2``; the remaining
inequality conditions are evaluated as residuals whose signs decide the
verdict.  Conditions are evaluated literally, including the ``(m_i - 1)``
factors, so parameter sets for which the equalities have no positive real
solution are reported as inapplicable rather than patched.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import Inapplicable
from .model import DerivedExponents, ModelParams, Regime, positive_power
from .similarity import BarrierKind, BarrierSpec, SimilarityScaling

DEFAULT_B_RANGE = (1e-3, 1e3)
DEFAULT_B_STEPS = 121


class Status(str, enum.Enum):
    CERTIFIED = "certified"
    VIOLATED = "violated"
    INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class Certificate:
    regime: Regime
    b: float
    B1: float = math.nan
    B2: float = math.nan
    residuals: dict = field(default_factory=dict)
    status: Status = Status.INAPPLICABLE
    violated: tuple = ()
    reason: str = ""

    @property
    def violation_magnitude(self) -> float:
        if self.status is Status.INAPPLICABLE:
            return math.inf
        return sum(abs(self.residuals[name]) for name in self.violated)

    def barrier(self, exps: DerivedExponents) -> BarrierSpec:
        """Comparison profile matching this certificate."""
        if self.status is Status.INAPPLICABLE:
            raise Inapplicable(self.reason)
        kind = BarrierKind.SLOW_SUPER if self.regime is Regime.SLOW else BarrierKind.FAST_SUB
        return BarrierSpec(kind, self.B1, self.B2, self.b, exps.gamma1, exps.gamma2)


# sign demanded by each inequality: +1 means ">= 0", -1 means "<= 0"
REQUIRED_SIGN = {"C3": 1, "C4": -1, "C7": -1, "C8": 1}


def amplitudes_from_equalities(model: ModelParams, exps: DerivedExponents,
                               s: SimilarityScaling, regime: Regime) -> tuple[float, float]:
    """Barrier amplitudes solving the two equality conditions.

    ``4 B1^k1 D1 g1 (m1-1) = 1`` and
    ``4 B2^k2 g2 D2 (m2-1) = (A1/A2)^(sigma2+m2)``.  The fast-regime
    equalities have the same printed form, with the unsubscripted exponent
    read as ``g1`` and ``g2`` respectively.
    """
    if regime is not exps.regime:
        raise ValueError(f"regime {regime.value} does not match exponents ({exps.regime.value})")
    if regime is Regime.DEGENERATE:
        raise Inapplicable("degenerate regime has no barrier construction")
    den1 = 4.0 * model.D1 * exps.gamma1 * (model.m1 - 1)
    den2 = 4.0 * model.D2 * exps.gamma2 * (model.m2 - 1)
    if den1 == 0 or den2 == 0:
        raise Inapplicable("m_i = 1 makes the amplitude equality unsolvable")
    B1 = positive_power(1.0 / den1, 1.0 / model.k1, "B1 equality base")
    B2 = positive_power(s.A_ratio ** (model.sigma2 + model.m2) / den2, 1.0 / model.k2,
                       "B2 equality base")
    return B1, B2


def _residual_terms(model, exps, s, B1, B2, b):
    g1, g2 = exps.gamma1, exps.gamma2
    t1 = (B1 ** (model.alpha1 - 1) * B2 ** model.beta1
          * b ** (model.alpha1 * g1 + model.beta1 * g2 - g1))
    t2 = (B1 ** model.alpha2 * B2 ** (model.beta2 - 1)
          * b ** (model.alpha2 * g1 + model.beta2 * g2 - g2))
    k1 = model.N / (2.0 * (model.m1 - 1))
    k2 = model.N / (2.0 * (model.m2 - 1)) * s.A_ratio ** model.k1
    return s.psi1 * (t1 - 1), s.psi2 * (t2 + 1), k1, k2


def _verdict(regime, b, B1, B2, residuals):
    violated = tuple(name for name, r in residuals.items()
                     if (r < 0 if REQUIRED_SIGN[name] > 0 else r > 0))
    status = Status.VIOLATED if violated else Status.CERTIFIED
    return Certificate(regime, b, B1, B2, residuals, status, violated)


def _check(model, exps, s, b, regime):
    if not b > 0:
        raise ValueError("b must be positive")
    if exps.regime is not regime:
        return Certificate(regime, b, reason=f"exponents are in the {exps.regime.value} regime")
    try:
        B1, B2 = amplitudes_from_equalities(model, exps, s, regime)
    except Inapplicable as exc:
        return Certificate(regime, b, reason=exc.reason)
    p1, p2, k1, k2 = _residual_terms(model, exps, s, B1, B2, b)
    if regime is Regime.SLOW:
        residuals = {"C3": p1 - k1, "C4": p2 - k2}
    else:
        residuals = {"C7": p1 + k1, "C8": p2 + k2}
    return _verdict(regime, b, B1, B2, residuals)


def check_slow(model: ModelParams, exps: DerivedExponents, s: SimilarityScaling,
               b: float) -> Certificate:
    """Slow-diffusion certificate: certified iff ``C3 >= 0`` and ``C4 <= 0``."""
    return _check(model, exps, s, b, Regime.SLOW)


def check_fast(model: ModelParams, exps: DerivedExponents, s: SimilarityScaling,
               b: float) -> Certificate:
    """Fast-diffusion certificate: certified iff ``C7 <= 0`` and ``C8 >= 0``."""
    return _check(model, exps, s, b, Regime.FAST)


def check(model, exps, s, b) -> Certificate:
    if exps.regime is Regime.FAST:
        return check_fast(model, exps, s, b)
    if exps.regime is Regime.SLOW:
        return check_slow(model, exps, s, b)
    return Certificate(Regime.DEGENERATE, b, reason="degenerate regime has no certificate")


class BSearch(NamedTuple):
    certified: Certificate | None
    best: Certificate
    scanned: int


def feasible_b_search(model: ModelParams, exps: DerivedExponents, s: SimilarityScaling,
                      b_min: float = DEFAULT_B_RANGE[0], b_max: float = DEFAULT_B_RANGE[1],
                      steps: int = DEFAULT_B_STEPS) -> BSearch:
    """Scan geometrically spaced ``b`` for a certified barrier.

    ``certified`` is the first certified certificate (smallest ``b``) or
    None; ``best`` is that certificate, or otherwise the one with the
    smallest total violation magnitude.
    """
    if not 0 < b_min < b_max:
        raise ValueError("need 0 < b_min < b_max")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    best = None
    for i, b in enumerate(np.geomspace(b_min, b_max, steps)):
        cert = check(model, exps, s, float(b))
        if cert.status is Status.CERTIFIED:
            return BSearch(cert, cert, i + 1)
        if cert.status is Status.INAPPLICABLE:
            # amplitudes do not depend on b, nothing else to learn
            return BSearch(None, cert, i + 1)
        if best is None or cert.violation_magnitude < best.violation_magnitude:
            best = cert
    return BSearch(None, best, steps)

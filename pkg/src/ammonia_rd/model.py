"""Model parameters, structural validation and derived exponents.

The system modelled here is

    u_t = D1 u^m1 div(u^sigma1 grad u) - a1 u^alpha1 v^beta1
    v_t = D2 v^m2 div(v^sigma2 grad v) - a2 u^alpha2 v^beta2

on R^N.  Self-similar reduction requires ``m1 + sigma1 == m2 + sigma2`` and
``alpha1 + beta1 == alpha2 + beta2``; everything downstream keys off the
exponents computed in :func:`derive_exponents`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, fields

from .errors import (
    ConsistencyViolation,
    DegenerateDiffusion,
    ExponentSingular,
    Inapplicable,
    InvalidModel,
    NonPositiveCoefficient,
)

DEFAULT_TOL = 1e-9


class Regime(str, enum.Enum):
    SLOW = "slow"
    FAST = "fast"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ModelParams:
    D1: float
    D2: float
    m1: float
    m2: float
    sigma1: float
    sigma2: float
    a1: float
    a2: float
    alpha1: float
    beta1: float
    alpha2: float
    beta2: float
    N: int = 2

    @property
    def k1(self) -> float:
        return self.m1 + self.sigma1

    @property
    def k2(self) -> float:
        return self.m2 + self.sigma2

    def replace(self, **changes) -> "ModelParams":
        data = asdict(self)
        data.update(changes)
        return type(self)(**data)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ValidatedModel(ModelParams):
    """A :class:`ModelParams` that passed :func:`validate_model`."""


@dataclass(frozen=True)
class DerivedExponents:
    n: float
    gamma1: float
    gamma2: float
    gamma3: float
    gamma4: float
    regime: Regime
    c1: float | None = None
    c2: float | None = None
    A_ratio: float = 1.0
    constants_note: str = ""
    n_second: float = math.nan  # n from the second equation's reaction orders


def model_violations(raw: ModelParams, tol: float = DEFAULT_TOL) -> list[Exception]:
    """Every constraint ``raw`` breaks, as exception instances (empty if valid)."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    out: list[Exception] = []
    for f in fields(raw):
        value = getattr(raw, f.name)
        if not math.isfinite(value):
            out.append(NonPositiveCoefficient(f"{f.name} is not finite"))
    if out:
        return out
    if raw.D1 <= 0:
        out.append(NonPositiveCoefficient(f"D1 must be > 0, got {raw.D1}"))
    if raw.D2 <= 0:
        out.append(NonPositiveCoefficient(f"D2 must be > 0, got {raw.D2}"))
    if raw.a1 < 0:
        out.append(NonPositiveCoefficient(f"a1 must be >= 0, got {raw.a1}"))
    if raw.a2 < 0:
        out.append(NonPositiveCoefficient(f"a2 must be >= 0, got {raw.a2}"))
    if int(raw.N) != raw.N or raw.N < 1:
        out.append(NonPositiveCoefficient(f"N must be a positive integer, got {raw.N}"))
    if abs(raw.k1 - raw.k2) > tol:
        out.append(ConsistencyViolation(
            f"m1+sigma1 = {raw.k1} differs from m2+sigma2 = {raw.k2}"))
    r1 = raw.alpha1 + raw.beta1 - 1
    r2 = raw.alpha2 + raw.beta2 - 1
    if abs(r1 - r2) > tol:
        out.append(ConsistencyViolation(
            f"alpha+beta-1 = {r1} (first) differs from {r2} (second)"))
    if abs(r1) <= tol:
        out.append(ExponentSingular("alpha1+beta1-1 vanishes so n is undefined"))
    if abs(r2) <= tol:
        out.append(ExponentSingular("alpha2+beta2-1 vanishes so n is undefined"))
    return out


def validate_model(raw: ModelParams, tol: float = DEFAULT_TOL) -> ValidatedModel:
    """Check positivity and the two scaling-consistency constraints.

    Raises
    ------
    InvalidModel
        With ``violations`` holding one :class:`ConsistencyViolation`,
        :class:`ExponentSingular` or :class:`NonPositiveCoefficient` per
        failed constraint.
    """
    violations = model_violations(raw, tol)
    if violations:
        raise InvalidModel(violations)
    data = asdict(raw)
    data["N"] = int(data["N"])
    return ValidatedModel(**data)


def classify_regime(gamma1: float, gamma2: float) -> Regime:
    if gamma1 > 0 and gamma2 > 0:
        return Regime.SLOW
    if gamma1 < 0 and gamma2 < 0:
        return Regime.FAST
    return Regime.DEGENERATE


def _gamma(m: float, sigma: float, which: int) -> float:
    k = m + sigma
    if k == 0:
        raise DegenerateDiffusion(f"m{which}+sigma{which} = 0, gamma{which} undefined")
    return 1.0 / k


def derive_exponents(model: ValidatedModel, A1: float = 1.0, A2: float = 1.0) -> DerivedExponents:
    """Temporal exponent ``n``, profile exponents and front constants."""
    if not (A1 > 0 and A2 > 0):
        raise ValueError("A1 and A2 must be positive")
    n = -1.0 / (model.alpha1 + model.beta1 - 1)
    n2 = -1.0 / (model.alpha2 + model.beta2 - 1)
    g1 = _gamma(model.m1, model.sigma1, 1)
    g2 = _gamma(model.m2, model.sigma2, 2)
    g3 = g1 * model.sigma1 + g1 - 1
    g4 = g2 * model.sigma2 + g2 - 1
    regime = classify_regime(g1, g2)
    exps = DerivedExponents(n=n, gamma1=g1, gamma2=g2, gamma3=g3, gamma4=g4,
                            regime=regime, A_ratio=A1 / A2, n_second=n2)
    try:
        c1, c2 = asymptotic_constants(exps, model.D1, model.D2, A1 / A2)
    except Inapplicable as exc:
        return _with(exps, constants_note=exc.reason)
    return _with(exps, c1=c1, c2=c2)


def _with(exps: DerivedExponents, **changes) -> DerivedExponents:
    data = {f.name: getattr(exps, f.name) for f in fields(exps)}
    data.update(changes)
    return DerivedExponents(**data)


def positive_power(base: float, exponent: float, what: str = "base") -> float:
    """``base**exponent`` restricted to real arithmetic on a positive base."""
    if not base > 0 or not math.isfinite(base):
        raise Inapplicable(f"{what} = {base} is not a positive real")
    return math.exp(exponent * math.log(base))


def asymptotic_constants(exps: DerivedExponents, D1: float, D2: float,
                         A_ratio: float = 1.0) -> tuple[float, float]:
    """Front amplitudes ``(c1, c2)`` of the slow or fast asymptotic laws.

    Slow: ``c1 = (1/(4 D1 g3))**g1``, ``c2 = A_ratio (1/(4 D2 g4))**g2``.
    Fast uses the negated bases.  Raises :class:`Inapplicable` when a base is
    not a positive real or the regime is degenerate.
    """
    if exps.regime is Regime.DEGENERATE:
        raise Inapplicable("degenerate regime: gamma1 and gamma2 differ in sign")
    sign = 1.0 if exps.regime is Regime.SLOW else -1.0
    bases = []
    for D, g, label in ((D1, exps.gamma3, "gamma3"), (D2, exps.gamma4, "gamma4")):
        if g == 0:
            raise Inapplicable(f"{label} = 0 makes the base infinite")
        bases.append(sign / (4.0 * D * g))
    c1 = positive_power(bases[0], exps.gamma1, "c1 base")
    c2 = A_ratio * positive_power(bases[1], exps.gamma2, "c2 base")
    return c1, c2


def front_exponent_conditions(model: ModelParams, exps: DerivedExponents) -> dict[str, float]:
    """Both sign conventions of the front-law exponent condition, per species.

    The condition circulates in two forms, ``alpha_i g1 - g2 beta_i - g_i + 1``
    (``stated_i``) and ``alpha_i g1 + g2 beta_i + g_i - 1`` (``proof_i``);
    both are reported so callers can see whether the forms agree.
    """
    out = {}
    for i, (al, be, gi) in enumerate(((model.alpha1, model.beta1, exps.gamma1),
                                     (model.alpha2, model.beta2, exps.gamma2)), 1):
        out[f"stated_{i}"] = al * exps.gamma1 - exps.gamma2 * be - gi + 1
        out[f"proof_{i}"] = al * exps.gamma1 + exps.gamma2 * be + gi - 1
    return out

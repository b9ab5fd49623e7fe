"""
Similarity exponents and regimes
================================

Derive n, the profile exponents and the front constants for the bundled
ammonia parameters, then sweep the diffusion exponents to see where the
slow and fast regimes sit.
"""
import numpy as np

from ammonia_rd import ModelParams, derive_exponents, make_scaling, validate_model
from ammonia_rd.config import bundled_config_path, parse_config

cfg = parse_config(bundled_config_path())
model = cfg.model
exps = derive_exponents(model, cfg.scaling.A1, cfg.scaling.A2)
print("n =", exps.n, " gamma1..4 =", exps.gamma1, exps.gamma2, exps.gamma3, exps.gamma4)
print("regime:", exps.regime.value)
print("front constants c1, c2 =", exps.c1, exps.c2)

s = make_scaling(model, exps, cfg.scaling.A1, cfg.scaling.A2, cfg.scaling.T)
print("p =", s.p, " psi1 =", s.psi1, " psi2 =", s.psi2)

# gamma = 1/(m + sigma) flips sign with m + sigma
for k in np.linspace(-2, 2, 9):
    if k == 0:
        continue
    m = validate_model(model.replace(sigma1=k, sigma2=k))
    e = derive_exponents(m)
    print(f"m+sigma = {k:+.1f}: gamma = {e.gamma1:+.3f}, {e.regime.value}")

# a parameter set that breaks the scaling constraint is rejected with every reason
try:
    validate_model(ModelParams(**{**model.as_dict(), "sigma2": 2.0, "D1": -1.0}))
except ValueError as exc:
    print("rejected:", exc)

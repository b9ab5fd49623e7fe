"""
Global-existence certificates
=============================

The barrier amplitudes come from two equalities, and the remaining sign
conditions are scanned over the barrier width b.  The ammonia parameters
have m = 0 and a positive profile exponent, which makes the amplitude base
negative: no certificate exists there.  A slow-diffusion instance with
m = 2 does certify.
"""
from ammonia_rd import ModelParams, derive_exponents, feasible_b_search, make_scaling, validate_model
from ammonia_rd.config import bundled_config_path, parse_config

base = parse_config(bundled_config_path()).model
e = derive_exponents(base)
found = feasible_b_search(base, e, make_scaling(base, e))
print("ammonia parameters:", found.best.status.value, "-", found.best.reason)

model = validate_model(ModelParams(D1=1, D2=1, m1=2, m2=2, sigma1=0, sigma2=0, a1=1, a2=0.05,
                                   alpha1=3, beta1=2, alpha2=2, beta2=3, N=2))
e = derive_exponents(model)
s = make_scaling(model, e)
found = feasible_b_search(model, e, s, b_min=0.5, b_max=50.0, steps=41)
cert = found.certified
print("m = 2 instance: certified at b =", round(cert.b, 4), "after", found.scanned, "trials")
print("  B1, B2 =", cert.B1, cert.B2)
for name, r in cert.residuals.items():
    print(f"  {name} = {r:+.4f}")

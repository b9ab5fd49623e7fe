"""
Radial profiles and their fronts
================================

Shoot the reduced radial equations outwards from the centre values and fit
the power law c (d^2 - xi^2)^gamma near each front.  With the reaction
strength tuned so that psi = -N / (2 (1 - m)) the fitted exponent matches
1/(m + sigma); otherwise the front is reached with a different exponent.
"""
from ammonia_rd import ModelParams, RadialBC, derive_exponents, front_fit, integrate_profile, make_scaling, validate_model
from ammonia_rd.config import bundled_config_path, parse_config

model = validate_model(ModelParams(D1=1, D2=1, m1=0, m2=0, sigma1=1.5, sigma2=1.5,
                                   a1=0.25, a2=0.25, alpha1=1.5, beta1=0.5, alpha2=0.5,
                                   beta2=1.5, N=1))
e = derive_exponents(model)
s = make_scaling(model, e)
print("psi =", s.psi1, "(front value", -model.N / 2, ")")
prof = integrate_profile(model, (s.psi1, s.psi2), RadialBC(M1=1e-4, M2=5e-5))
for i, fit in enumerate(front_fit(prof), 1):
    print(f"f{i}: front at xi = {fit.b_est ** 0.5:.5f}, gamma_est = {fit.gamma_est:.4f} "
          f"(1/(m+sigma) = {e.gamma1:.4f})")

# the ammonia parameters with A1 = A2 = 100
cfg = parse_config(bundled_config_path())
m = cfg.model
e = derive_exponents(m, 100, 100)
s = make_scaling(m, e, 100, 100)
prof = integrate_profile(m, (s.psi1, s.psi2), RadialBC(M1=31, M2=10), A_ratio=s.A_ratio)
print("ammonia profile fronts:", prof.d1, prof.d2)
for xi in (0.0, 0.25 * prof.d2, 0.5 * prof.d2, 0.9 * prof.d2):
    f1, f2 = prof(xi)
    print(f"  xi = {xi:.5f}: f1 = {f1:.4f}, f2 = {f2:.4f}")

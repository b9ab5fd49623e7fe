"""
Comparison with a super-solution
================================

Start the ADI solver just below a certified barrier pair and watch the
numerical solution stay beneath it.
"""
import numpy as np

from ammonia_rd import FieldPair, Grid2D, ModelParams, SolverConfig, derive_exponents, make_scaling, run_simulation, validate_model
from ammonia_rd.existence import check_slow
from ammonia_rd.similarity import comparison_field

model = validate_model(ModelParams(D1=1, D2=1, m1=2, m2=2, sigma1=0, sigma2=0, a1=1, a2=0.05,
                                   alpha1=3, beta1=2, alpha2=2, beta2=3, N=2))
e = derive_exponents(model)
s = make_scaling(model, e)
barrier = check_slow(model, e, s, 3.0).barrier(e)

grid = Grid2D(4.0, 4.0, 101, 101)
X, Y = grid.mesh()
pts = np.stack([X, Y], axis=-1)
w1, w2 = comparison_field(barrier, s, 0.0, pts)
res = run_simulation(model, grid, SolverConfig(dt=0.01, t_end=1.0, save_every=20),
                     FieldPair(0.9 * w1, 0.9 * w2))

for snap in res.snapshots:
    c1, c2 = comparison_field(barrier, s, snap.t, pts)
    inside = c1 > 0
    print(f"t = {snap.t:.1f}: largest u/w1 = {np.max(snap.u[inside] / c1[inside]):.4f}, "
          f"v/w2 = {np.max(snap.v[inside] / c2[inside]):.4f}")

"""Similarity analysis and 2D ADI simulation of a degenerate reaction-diffusion
model of ammonia synthesis."""
from .errors import AmmoniaRDError, Inapplicable, InvalidModel
from .existence import Certificate, Status, check_fast, check_slow, feasible_b_search
from .grid import Grid2D
from .model import (
    DerivedExponents,
    ModelParams,
    Regime,
    ValidatedModel,
    asymptotic_constants,
    derive_exponents,
    validate_model,
)
from .observables import (
    TimeSeries,
    conversion_series,
    cross_section,
    front_radius,
    reaction_rate,
    total_mass,
)
from .pde import FieldPair, SolverConfig, adi_step, initial_bumps, run_simulation
from .radial import RadialBC, RadialProfile, asymptotic_profile, front_fit, integrate_profile
from .similarity import BarrierKind, BarrierSpec, SimilarityScaling, make_scaling
from .tridiag import thomas_solve

__version__ = "0.1.0"


"""Diagnostics of a 2D run: masses, conversions, rates, cross-sections, fronts."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoCenterRow, TooFewPoints, ZeroInitialMass
from .grid import Grid2D

SERIES_HEADER = ("t", "mass_u", "mass_v", "conv_u", "conv_v", "rate_u", "rate_v")


@dataclass
class TimeSeries:
    t: np.ndarray
    mass_u: np.ndarray
    mass_v: np.ndarray
    conv_u: np.ndarray
    conv_v: np.ndarray
    rate_u: np.ndarray
    rate_v: np.ndarray

    def columns(self) -> list[np.ndarray]:
        return [getattr(self, name) for name in SERIES_HEADER]


def _check_shape(field, grid):
    field = np.asarray(field, dtype=float)
    if field.shape != grid.shape:
        raise DimensionMismatch(f"field shape {field.shape} does not match grid {grid.shape}")
    return field


def total_mass(field, grid: Grid2D) -> float:
    """Midpoint quadrature ``sum(c) dx dy``.

    Boundary nodes carry full weight; they hold zero under Dirichlet data.
    """
    field = _check_shape(field, grid)
    return float(field.sum() * grid.dx * grid.dy)


def conversion_series(masses, m0: float) -> np.ndarray:
    """Percentage of the initial amount consumed: ``100 (m0 - m) / m0``."""
    if not m0 > 0:
        raise ZeroInitialMass(f"initial mass must be positive, got {m0}")
    return 100.0 * (m0 - np.asarray(masses, dtype=float)) / m0


def reaction_rate(t, mass) -> np.ndarray:
    """Consumption rate ``-dm/dt``: central differences inside, one-sided at the ends."""
    t = np.asarray(t, dtype=float)
    mass = np.asarray(mass, dtype=float)
    if t.size < 3:
        raise TooFewPoints("rates need at least 3 time points")
    return -np.gradient(mass, t, edge_order=1)


def build_series(t, mass_u, mass_v) -> TimeSeries:
    mass_u = np.asarray(mass_u, dtype=float)
    mass_v = np.asarray(mass_v, dtype=float)
    return TimeSeries(
        t=np.asarray(t, dtype=float),
        mass_u=mass_u,
        mass_v=mass_v,
        conv_u=conversion_series(mass_u, mass_u[0]),
        conv_v=conversion_series(mass_v, mass_v[0]),
        rate_u=reaction_rate(t, mass_u),
        rate_v=reaction_rate(t, mass_v),
    )


def cross_section(field, grid: Grid2D) -> tuple[np.ndarray, np.ndarray]:
    """Values along the centre row ``y = 0``."""
    field = _check_shape(field, grid)
    if grid.ny % 2 == 0:
        raise NoCenterRow(f"ny = {grid.ny} is even, no row sits on y = 0")
    return grid.x, field[(grid.ny - 1) // 2].copy()


def front_radius(field, grid: Grid2D, eps: float) -> float:
    """Largest distance from the domain centre of a node with value above ``eps``."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    field = _check_shape(field, grid)
    mask = field > eps
    if not mask.any():
        return 0.0
    return float(grid.radius()[mask].max())

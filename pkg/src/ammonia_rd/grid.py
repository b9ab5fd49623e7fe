from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Grid2D:
    """Uniform node-centred grid on ``[-Lx, Lx] x [-Ly, Ly]``.

    Fields live on arrays of shape ``(ny, nx)``: rows follow ``y``.
    """
    Lx: float = 1.0
    Ly: float = 1.0
    nx: int = 201
    ny: int = 201

    def __post_init__(self):
        if self.nx < 3 or self.ny < 3:
            raise ValueError("grids need at least 3 points per direction")
        if not (self.Lx > 0 and self.Ly > 0):
            raise ValueError("half-widths must be positive")

    @property
    def dx(self) -> float:
        return 2.0 * self.Lx / (self.nx - 1)

    @property
    def dy(self) -> float:
        return 2.0 * self.Ly / (self.ny - 1)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.ny, self.nx)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(-self.Lx, self.Lx, self.nx)

    @property
    def y(self) -> np.ndarray:
        return np.linspace(-self.Ly, self.Ly, self.ny)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x, self.y)

    def radius(self) -> np.ndarray:
        X, Y = self.mesh()
        return np.hypot(X, Y)

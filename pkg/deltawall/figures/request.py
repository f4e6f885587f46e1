"""The options handed to every figure generator.

Classes:
    FigureRequest: Grid sizes, axis ranges, pole-locus couplings and solver
        settings.
"""

from typing import (
    Optional,
    Tuple,
)
import dataclasses

from ..errors import DomainError
from ..settings import ResonanceSettings, RootSettings

__all__ = ("FigureRequest",)


@dataclasses.dataclass(frozen=True)
class FigureRequest:
    """Options shared by the figure generators.

    Attributes:
        count: Points per swept axis.
        x0_max: Upper end of x₀ axes.
        lambda_max: Upper end of λ axes of the E(λ) curves.
        surface_lambda_max: Upper end of the λ axis of the energy surfaces.
        alphas: Couplings α = λx₀ of the pole-locus figures.
        n_max: Poles per α in the pole-locus figures.
        roots: Bound-state root-finder settings.
        resonances: Pole-search settings.
        workers: Threads used to evaluate grid points.
    """

    count: int = 60
    x0_max: float = 5.0
    lambda_max: float = 5.0
    surface_lambda_max: float = 3.0
    alphas: Tuple[float, ...] = (0.5, 1.0, 2.0, 5.0)
    n_max: int = 5
    roots: Optional[RootSettings] = None
    resonances: Optional[ResonanceSettings] = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.count < 2:
            raise DomainError("figure grids need at least 2 points")
        if min(self.x0_max, self.lambda_max, self.surface_lambda_max) <= 0:
            raise DomainError("axis ranges must be positive")
        if not self.alphas or any(alpha <= 0 for alpha in self.alphas):
            raise DomainError("alphas must be positive")
        if self.n_max < 1:
            raise DomainError("n_max must be at least 1")

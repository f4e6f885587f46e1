"""Settings for the numerical oracles.

Classes:
    QuadratureSettings: Tolerances for the adaptive quadratures.
    ShootingConfig: Integrator and bisection settings of the shooting
        eigensolver.
"""

from typing import Optional

from ..dataclass import dataclass
from ..errors import DomainError

__all__ = (
    "QuadratureSettings",
    "ShootingConfig",
)


@dataclass(frozen=True)
class QuadratureSettings:
    """Settings for the Gauss–Kronrod quadratures used by the oracles.

    Settings:
        epsabs: Absolute tolerance requested from `scipy.integrate.quad`.
        epsrel: Relative tolerance requested from `scipy.integrate.quad`.
        limit: Maximum number of subintervals.
        cutoff: Integrand bound below which infinite ranges are truncated.
    """

    epsabs: float = 1e-9
    epsrel: float = 1e-10
    limit: int = 200
    cutoff: float = 1e-12

    def __post_init__(self) -> None:
        if min(self.epsabs, self.epsrel, self.cutoff) <= 0:
            raise DomainError("quadrature tolerances must be positive")
        if self.limit < 1:
            raise DomainError("limit must be at least 1")


@dataclass(frozen=True)
class ShootingConfig:
    """Settings for the ODE shooting eigensolver.

    Settings:
        step: Largest step the integrator may take. None lets the adaptive
            integrator choose.
        x_max: Matching point. None places it `margin` decay lengths beyond
            x₀ for every trial energy.
        tol: Absolute tolerance on κ for the bracketed energy search.
        rtol: Relative tolerance of the integrator.
        atol: Absolute tolerance of the integrator.
        margin: Decay lengths 1/κ between x₀ and the automatic x_max.
    """

    step: Optional[float] = None
    x_max: Optional[float] = None
    tol: float = 1e-13
    rtol: float = 1e-12
    atol: float = 1e-14
    margin: float = 10.0

    def __post_init__(self) -> None:
        if self.step is not None and self.step <= 0:
            raise DomainError("step must be positive")
        if self.x_max is not None and self.x_max <= 0:
            raise DomainError("x_max must be positive")
        if min(self.tol, self.rtol, self.atol) <= 0:
            raise DomainError("shooting tolerances must be positive")
        if self.margin < 10:
            raise DomainError("margin must be at least 10 decay lengths")

    def matching_point(self, x0: float, kappa: float) -> float:
        """Return the matching point for a trial decay constant κ.

        An explicit x_max must lie beyond x₀.
        """
        if self.x_max is None:
            return x0 + self.margin / kappa
        if self.x_max <= x0:
            raise DomainError(f"x_max = {self.x_max} must exceed x0 = {x0}")
        return self.x_max

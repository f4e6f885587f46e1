"""Exceptions raised by the solvers and kernels.

Classes:
    DeltaWallError: Base class for every error raised by this package.
    DomainError: An argument lies outside the window an operation is defined on.
    PoleProximityError: A resolvent was evaluated at or too near its pole.
    ConvergenceError: An iterative solver gave up before reaching tolerance.
    NoBoundStateError: A bound state was required but the operator has none.
    QuadratureFailure: An adaptive quadrature could not reach its tolerance.
"""

from typing import Optional

__all__ = (
    "ConvergenceError",
    "DeltaWallError",
    "DomainError",
    "NoBoundStateError",
    "PoleProximityError",
    "QuadratureFailure",
)


class DeltaWallError(Exception):
    """Base class for all errors raised by deltawall."""


class DomainError(DeltaWallError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class PoleProximityError(DeltaWallError, ArithmeticError):
    """The Krein denominator 1 - λG(x₀, x₀; E) is below the configured guard."""

    def __init__(self, energy: float, denominator: float, guard: float) -> None:
        self.energy = energy
        self.denominator = denominator
        self.guard = guard
        super().__init__(
            f"E = {energy!r} is within {abs(denominator):.3e} of the eigenvalue "
            f"(guard {guard:.1e})"
        )


class ConvergenceError(DeltaWallError, RuntimeError):
    """An iterative solver stopped without meeting its tolerance.

    Attributes:
        branch: The resonance branch being searched, if any.
        residual: The best max-norm residual reached.
        iterations: The number of iterations spent.
    """

    def __init__(
        self,
        message: str,
        *,
        branch: Optional[int] = None,
        residual: float = float("nan"),
        iterations: int = 0,
    ) -> None:
        self.branch = branch
        self.residual = residual
        self.iterations = iterations
        super().__init__(message)


class NoBoundStateError(DeltaWallError, LookupError):
    """The configuration has no bound state to evaluate."""


class QuadratureFailure(DeltaWallError, ArithmeticError):
    """The adaptive quadrature reported that it could not converge."""

"""Ground states of the δ-sphere interaction -Δ - λδ(r - r₀) in three dimensions.

In the s-wave sector ψ(r) = u(r)/r reduces the problem to the half-line with
a wall at r = 0. The ordinary Laplacian -Δ∞,₀ puts a Dirichlet wall there
(u(0⁺) = 0); the extension -Δ₀,₀, which carries a zero-energy resonance,
puts a Neumann wall (u'(0⁺) = 0). The general extension -Δα,₀ has the Robin
wall u'(0⁺) = 4παu(0⁺) and is not exposed. Only l = 0 is treated.

Classes:
    Extension: The self-adjoint extension of the Laplacian.

Functions:
    shell_ground_state: The ground-state energy, when there is one.
    radial_ground_wavefunction: The normalized s-wave ground state u(r)/r.
"""

from typing import Optional, Union
import enum
import math

from .errors import DomainError, NoBoundStateError
from .kernels import BoundaryCondition, DeltaConfig
from .settings import RootSettings
from .spectral import (
    BoundState,
    bound_state_energy,
    eigenfunction,
    eigenfunction_derivative,
)

__all__ = (
    "Extension",
    "radial_ground_wavefunction",
    "shell_ground_state",
)


class Extension(enum.Enum):
    """A self-adjoint extension of the three-dimensional Laplacian."""

    DELTA_INF_0 = "inf0"
    DELTA_00 = "00"

    @property
    def boundary_condition(self) -> BoundaryCondition:
        """The wall its s-wave sector imposes at r = 0."""
        if self is Extension.DELTA_INF_0:
            return BoundaryCondition.DIRICHLET
        return BoundaryCondition.NEUMANN

    @classmethod
    def parse(cls, value: Union[str, "Extension"]) -> "Extension":
        if isinstance(value, cls):
            return value
        name = str(value).strip().lower()
        for member in cls:
            if name in (member.value, member.name.lower()):
                return member
        raise DomainError(f"Unknown extension: {value!r}")


def _ground_state(
    ext: Extension, lam: float, r0: float, settings: Optional[RootSettings]
) -> Optional[BoundState]:
    return bound_state_energy(
        ext.boundary_condition, DeltaConfig(lam, r0), settings=settings
    )


def shell_ground_state(
    ext: Extension,
    lam: float,
    r0: float,
    *,
    settings: Optional[RootSettings] = None,
) -> Optional[float]:
    """Return the ground-state energy of the δ-sphere Hamiltonian.

    It is the single eigenvalue of the half-line problem with the wall of the
    extension: empty for -Δ∞,₀ when λr₀ ≤ 1, always present for -Δ₀,₀.

    Raises:
        DomainError: λ or r₀ is not positive.
    """
    if not r0 > 0:
        raise DomainError(f"r0 must be positive, got {r0!r}")
    state = _ground_state(Extension.parse(ext), lam, r0, settings)
    return None if state is None else state.energy


def radial_ground_wavefunction(
    ext: Extension,
    lam: float,
    r0: float,
    r: float,
    *,
    settings: Optional[RootSettings] = None,
) -> float:
    """Evaluate the s-wave ground state u(r)/r, with 4π∫u² dr = 1.

    At r = 0 the -Δ∞,₀ value is the limit u'(0); the -Δ₀,₀ state diverges
    like 1/r there and inf is returned.

    Raises:
        NoBoundStateError: The extension has no ground state for (λ, r₀).
        DomainError: r is negative or a parameter is invalid.
    """
    ext = Extension.parse(ext)
    if not r0 > 0:
        raise DomainError(f"r0 must be positive, got {r0!r}")
    if not (math.isfinite(r) and r >= 0):
        raise DomainError(f"r must be nonnegative, got {r!r}")
    state = _ground_state(ext, lam, r0, settings)
    if state is None:
        raise NoBoundStateError(
            f"{ext.value} has no ground state for lambda={lam}, r0={r0}"
        )
    scale = 1.0 / math.sqrt(4.0 * math.pi)
    if r == 0:
        if ext is Extension.DELTA_00:
            return math.inf
        return scale * eigenfunction_derivative(state, 0.0)
    return scale * eigenfunction(state, r) / r

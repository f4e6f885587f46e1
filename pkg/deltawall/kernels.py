"""Closed-form resolvent and heat kernels of the half-line Laplacian.

The unperturbed operator is -d²/dx² on [0, ∞) with a Dirichlet (ψ(0) = 0) or
Neumann (ψ'(0) = 0) wall. The perturbed operator adds -λδ(x - x₀); its
resolvent is the free one plus the Krein rank-one correction, with the
convention ψ'(x₀⁺) - ψ'(x₀⁻) = -λψ(x₀). Units are dimensionless
(ħ = 2m = 1).

Classes:
    BoundaryCondition: The wall at the origin.
    DeltaConfig: The coupling strength λ and location x₀ of the delta.
    KernelSample: One evaluated kernel value with its evaluation point.

Functions:
    free_green: Resolvent kernel of the unperturbed operator at E < 0.
    heat_kernel: Kernel of the unperturbed semigroup at time t > 0.
    birman_schwinger_value: The scalar λG(x₀, x₀; E).
    perturbed_green: Resolvent kernel of the perturbed operator at E < 0.
    green_continued: λG(x₀, x₀) continued to complex momentum k.
    robin_limit_green: The x₀ → 0⁺ limit of the Neumann perturbed kernel.
"""

from typing import (
    Optional,
    Union,
)
import cmath
import dataclasses
import enum
import math

from .errors import DomainError, PoleProximityError
from .settings import KernelSettings

__all__ = (
    "BoundaryCondition",
    "DeltaConfig",
    "KernelSample",
    "birman_schwinger_value",
    "free_green",
    "green_continued",
    "heat_kernel",
    "perturbed_green",
    "robin_limit_green",
)

# Below this value of 2κx the Dirichlet wall factor switches to its series.
_SERIES_THRESHOLD = 1e-4

_DEFAULT_KERNEL_SETTINGS = KernelSettings()


class BoundaryCondition(enum.Enum):
    """The condition imposed by the wall at the origin."""

    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"

    @property
    def sign(self) -> int:
        """Sign of the image term: -1 for Dirichlet, +1 for Neumann."""
        return -1 if self is BoundaryCondition.DIRICHLET else 1

    @classmethod
    def parse(cls, value: Union[str, "BoundaryCondition"]) -> "BoundaryCondition":
        """Return the condition named by a case-insensitive string.

        "d" and "n" are accepted as abbreviations.
        """
        if isinstance(value, cls):
            return value
        name = str(value).strip().lower()
        for member in cls:
            if member.value == name or member.value[0] == name:
                return member
        raise DomainError(f"Unknown boundary condition: {value!r}")


@dataclasses.dataclass(frozen=True)
class DeltaConfig:
    """The delta perturbation -λδ(x - x₀).

    Attributes:
        lam: The coupling strength λ > 0 (1/length).
        x0: The location x₀ ≥ 0 of the delta (length). x₀ = 0 stands for the
            limit operator, which is the free Dirichlet Laplacian for a
            Dirichlet wall and a Robin wall φ'(0⁺) = -λφ(0⁺) for a Neumann one.
        alpha: The dimensionless product λx₀.
    """

    lam: float
    x0: float
    alpha: float = dataclasses.field(init=False)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"lambda must be positive and finite, got {self.lam!r}")
        if not (math.isfinite(self.x0) and self.x0 >= 0):
            raise DomainError(f"x0 must be nonnegative and finite, got {self.x0!r}")
        object.__setattr__(self, "alpha", self.lam * self.x0)

    def scaled(self, factor: float) -> "DeltaConfig":
        """Return the configuration (cλ, x₀/c), which has the same α."""
        return DeltaConfig(self.lam * factor, self.x0 / factor)


@dataclasses.dataclass(frozen=True)
class KernelSample:
    """An evaluated kernel value.

    Attributes:
        kind: "green", "heat", "perturbed" or "continued".
        x: First coordinate.
        y: Second coordinate.
        parameter: The energy E < 0, the time t > 0 or the complex momentum k.
        value: The kernel value; real for real-energy and heat samples.
    """

    kind: str
    x: float
    y: float
    parameter: Union[float, complex]
    value: Union[float, complex]

    def __post_init__(self) -> None:
        if not cmath.isfinite(self.value):
            raise DomainError(f"{self.kind} kernel value is not finite")


def _check_coordinates(*coordinates: float) -> None:
    for value in coordinates:
        if not (math.isfinite(value) and value >= 0):
            raise DomainError(f"coordinates must be nonnegative, got {value!r}")


def _kappa(energy: float) -> float:
    """Return κ = |E|^{1/2} for a negative real energy."""
    if not (math.isfinite(energy) and energy < 0):
        raise DomainError(
            f"real-energy kernels need E < 0 (continuous spectrum is [0, ∞)), "
            f"got {energy!r}"
        )
    return math.sqrt(-energy)


def _dirichlet_ratio(u: float) -> float:
    """Return (1 - e^{-u})/u, finite and accurate down to u = 0."""
    if u < _SERIES_THRESHOLD:
        return 1.0 - u / 2.0 * (1.0 - u / 3.0 * (1.0 - u / 4.0))
    return -math.expm1(-u) / u


def _image_factor(bc: BoundaryCondition, kappa: float, nearest: float) -> float:
    """Return (1 ∓ e^{-2κm})/(2κ) where m = min(x, y)."""
    if bc is BoundaryCondition.DIRICHLET:
        return nearest * _dirichlet_ratio(2.0 * kappa * nearest)
    return (1.0 + math.exp(-2.0 * kappa * nearest)) / (2.0 * kappa)


def _green(bc: BoundaryCondition, x: float, y: float, kappa: float) -> float:
    return math.exp(-kappa * abs(x - y)) * _image_factor(bc, kappa, min(x, y))


def free_green(bc: BoundaryCondition, x: float, y: float, energy: float) -> float:
    """Evaluate the unperturbed resolvent kernel.

    G(x, y; E) = [e^{-κ|x-y|} ∓ e^{-κ(x+y)}]/(2κ) with κ = |E|^{1/2}, minus
    for a Dirichlet wall and plus for a Neumann wall. The image term is
    factored as e^{-κ|x-y|}(1 ∓ e^{-2κ min(x, y)}) so the result is exactly
    symmetric and free of cancellation near the wall.

    Args:
        bc: The wall at the origin.
        x: First coordinate, x ≥ 0.
        y: Second coordinate, y ≥ 0.
        energy: A negative real energy.

    Returns: The kernel value, strictly positive for x, y > 0.

    Raises:
        DomainError: E ≥ 0 or a coordinate is negative.
    """
    _check_coordinates(x, y)
    return _green(bc, x, y, _kappa(energy))


def heat_kernel(bc: BoundaryCondition, x: float, y: float, t: float) -> float:
    """Evaluate the kernel of the unperturbed semigroup e^{-tH}.

    K_t(x, y) = [e^{-(x-y)²/4t} ∓ e^{-(x+y)²/4t}]/(2√(πt)).

    Raises:
        DomainError: t ≤ 0 or a coordinate is negative.
    """
    _check_coordinates(x, y)
    if not (math.isfinite(t) and t > 0):
        raise DomainError(f"t must be positive, got {t!r}")
    direct = math.exp(-((x - y) ** 2) / (4.0 * t))
    # (x+y)² - (x-y)² = 4xy
    if bc is BoundaryCondition.DIRICHLET:
        image = -math.expm1(-x * y / t)
    else:
        image = 1.0 + math.exp(-x * y / t)
    return direct * image / (2.0 * math.sqrt(math.pi * t))


def birman_schwinger_value(
    bc: BoundaryCondition, cfg: DeltaConfig, energy: float
) -> float:
    """Return λG(x₀, x₀; E) = λ(1 ∓ e^{-2κx₀})/(2κ).

    The value equals 1 exactly at the eigenvalue and the Neumann series of
    the perturbed resolvent converges iff it is below 1.

    Raises:
        DomainError: E ≥ 0.
    """
    return cfg.lam * _image_factor(bc, _kappa(energy), cfg.x0)


def perturbed_green(
    bc: BoundaryCondition,
    cfg: DeltaConfig,
    x: float,
    y: float,
    energy: float,
    *,
    settings: Optional[KernelSettings] = None,
) -> float:
    """Evaluate the resolvent kernel of the perturbed operator by Krein's formula.

    G_λ(x, y; E) = G(x, y) + λG(x, x₀)G(x₀, y)/(1 - λG(x₀, x₀)).

    Args:
        bc: The wall at the origin.
        cfg: The delta perturbation.
        x: First coordinate, x ≥ 0.
        y: Second coordinate, y ≥ 0.
        energy: A negative real energy other than the eigenvalue.
        settings: Kernel settings holding the pole guard.

    Returns: The kernel value.

    Raises:
        DomainError: E ≥ 0 or a coordinate is negative.
        PoleProximityError: |1 - λG(x₀, x₀; E)| is below the pole guard.
    """
    settings = settings or _DEFAULT_KERNEL_SETTINGS
    _check_coordinates(x, y)
    kappa = _kappa(energy)
    denominator = 1.0 - cfg.lam * _image_factor(bc, kappa, cfg.x0)
    if abs(denominator) < settings.pole_guard:
        raise PoleProximityError(energy, denominator, settings.pole_guard)
    correction = _green(bc, x, cfg.x0, kappa) * _green(bc, cfg.x0, y, kappa)
    return _green(bc, x, y, kappa) + cfg.lam * correction / denominator


def _cexpm1(z: complex) -> complex:
    """Return e^z - 1 without cancellation for small |z|."""
    a, b = z.real, z.imag
    real = math.expm1(a) * math.cos(b) - 2.0 * math.sin(b / 2.0) ** 2
    return complex(real, math.exp(a) * math.sin(b))


def green_continued(bc: BoundaryCondition, cfg: DeltaConfig, k: complex) -> complex:
    """Continue λG(x₀, x₀) from E = -κ² to complex momentum k.

    Returns λ(1 ∓ e^{2ikx₀})/(-2ik), which equals birman_schwinger_value at
    k = iκ. Poles of the perturbed resolvent are the points where this
    value is 1: the bound state on the positive imaginary axis, resonances
    in the lower half plane.

    Raises:
        DomainError: k = 0, where the value has a removable singularity with
            limit λx₀ for a Dirichlet wall.
    """
    k = complex(k)
    if k == 0:
        raise DomainError("green_continued is singular at k = 0")
    phase = 2j * k * cfg.x0
    if bc is BoundaryCondition.DIRICHLET:
        if abs(phase) < _SERIES_THRESHOLD:
            # (e^w - 1)/w
            ratio = 1.0 + phase / 2.0 * (1.0 + phase / 3.0 * (1.0 + phase / 4.0))
            return cfg.lam * cfg.x0 * ratio
        numerator = -_cexpm1(phase)
    else:
        numerator = 2.0 + _cexpm1(phase)
    return cfg.lam * numerator / (-2j * k)


def robin_limit_green(
    lam: float,
    x: float,
    y: float,
    energy: float,
    *,
    settings: Optional[KernelSettings] = None,
) -> float:
    """Evaluate the x₀ → 0⁺ limit of the Neumann perturbed kernel.

    The limit operator is -d²/dx² with the Robin condition φ'(0⁺) = -λφ(0⁺);
    its kernel is e^{-κ|x-y|}/(2κ) + (κ + λ)e^{-κ(x+y)}/(2κ(κ - λ)), with the
    single eigenvalue E = -λ².

    Raises:
        DomainError: λ ≤ 0, E ≥ 0 or a coordinate is negative.
        PoleProximityError: E is within the pole guard of -λ².
    """
    settings = settings or _DEFAULT_KERNEL_SETTINGS
    if not (math.isfinite(lam) and lam > 0):
        raise DomainError(f"lambda must be positive and finite, got {lam!r}")
    _check_coordinates(x, y)
    kappa = _kappa(energy)
    denominator = 1.0 - lam / kappa
    if abs(denominator) < settings.pole_guard:
        raise PoleProximityError(energy, denominator, settings.pole_guard)
    direct = math.exp(-kappa * abs(x - y)) / (2.0 * kappa)
    reflected = (kappa + lam) * math.exp(-kappa * (x + y))
    reflected /= 2.0 * kappa * (kappa - lam)
    return direct + reflected

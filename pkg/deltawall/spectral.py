"""Bound states of the half-line Laplacian perturbed by -λδ(x - x₀).

Each operator has at most one eigenvalue E = -κ². With a Dirichlet wall κ
solves λ(1 - e^{-2κx₀}) = 2κ and exists iff λx₀ > 1; with a Neumann wall κ
solves λ(1 + e^{-2κx₀}) = 2κ and always exists. Both equations are also the
excited-state and ground-state conditions of the symmetric double delta on
the full line, so no separate solver is kept for that model.

Classes:
    BoundState: An eigenvalue with its normalized eigenfunction data.
    SweepPoint: One row of an energy sweep.

Functions:
    bound_state_energy: Solve the bound-state equation.
    x0_of_energy: The inverse map E ↦ x₀ at fixed λ.
    threshold_x0: The Dirichlet emergence point x₀ = 1/λ.
    threshold_lambda: The Dirichlet emergence point λ = 1/x₀.
    asymptotic_energy: The x₀ → ∞ limit -λ²/4.
    eigenfunction: The normalized eigenfunction ψ(x).
    eigenfunction_derivative: The one-sided derivative ψ'(x).
    energy_sweep: Bound-state energies along a λ or x₀ grid.
"""

from typing import (
    List,
    Optional,
    Sequence,
)
import dataclasses
import logging
import math

import numpy as np
from scipy import optimize

from .errors import DomainError
from .fanout import fan_out
from .kernels import BoundaryCondition, DeltaConfig
from .settings import RootSettings

__all__ = (
    "BoundState",
    "SweepPoint",
    "asymptotic_energy",
    "bound_state_energy",
    "eigenfunction",
    "eigenfunction_derivative",
    "energy_sweep",
    "threshold_lambda",
    "threshold_x0",
    "x0_of_energy",
)

INF = math.inf

# Below this κx₀ the Dirichlet inner norm switches to its series.
_NORM_SERIES_THRESHOLD = 1e-3

_DEFAULT_ROOT_SETTINGS = RootSettings()


@dataclasses.dataclass(frozen=True)
class BoundState:
    """The eigenvalue and eigenfunction of one perturbed operator.

    The eigenfunction is A·sinh(κx) (Dirichlet) or A·cosh(κx) (Neumann) for
    x ≤ x₀ and B·e^{-κx} for x ≥ x₀, continuous at x₀ with derivative jump
    -λψ(x₀), and normalized in L²(0, ∞).

    Attributes:
        energy: The eigenvalue E = -κ².
        kappa: The decay constant κ = |E|^{1/2}.
        amplitude_inner: A. May overflow to inf for very large κx₀, in which
            case evaluation goes through value_at_delta.
        amplitude_outer: B. May overflow to inf for very large κx₀.
        value_at_delta: ψ(x₀), the amplitude evaluation is anchored on.
        bc: The wall at the origin.
        cfg: The delta perturbation.
    """

    energy: float
    kappa: float
    amplitude_inner: float
    amplitude_outer: float
    value_at_delta: float
    bc: BoundaryCondition
    cfg: DeltaConfig


@dataclasses.dataclass(frozen=True)
class SweepPoint:
    """One row of an energy sweep.

    Attributes:
        parameter: The swept value of λ or x₀ (inf for the x₀ = ∞ sentinel).
        energy: The eigenvalue, 0.0 at the Dirichlet threshold, or None.
        exists: Whether an L² eigenvalue exists.
        asymptotic: Whether the row is the closed x₀ = ∞ asymptote.
        threshold: Whether the row sits exactly at the Dirichlet threshold.
    """

    parameter: float
    energy: Optional[float]
    exists: bool
    asymptotic: bool = False
    threshold: bool = False


def threshold_x0(bc: BoundaryCondition, lam: float) -> Optional[float]:
    """Return the x₀ at which the Dirichlet eigenvalue leaves E = 0.

    Returns: 1/λ for a Dirichlet wall, None for a Neumann wall, which binds
        for every x₀.
    """
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    return 1.0 / lam if bc is BoundaryCondition.DIRICHLET else None


def threshold_lambda(bc: BoundaryCondition, x0: float) -> Optional[float]:
    """Return the coupling 1/x₀ above which a Dirichlet bound state exists."""
    if not x0 > 0:
        raise DomainError(f"x0 must be positive, got {x0!r}")
    return 1.0 / x0 if bc is BoundaryCondition.DIRICHLET else None


def asymptotic_energy(lam: float) -> float:
    """Return -λ²/4, the x₀ → ∞ eigenvalue shared by both walls."""
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    return -lam * lam / 4.0


def _secular(bc: BoundaryCondition, cfg: DeltaConfig, kappa: float) -> float:
    """Return λ(1 ∓ e^{-2κx₀}) - 2κ; positive below the root, negative above."""
    u = 2.0 * kappa * cfg.x0
    if bc is BoundaryCondition.DIRICHLET:
        return cfg.lam * -math.expm1(-u) - 2.0 * kappa
    return cfg.lam * (1.0 + math.exp(-u)) - 2.0 * kappa


def _solve_kappa(
    bc: BoundaryCondition, cfg: DeltaConfig, settings: RootSettings
) -> Optional[float]:
    lam = cfg.lam
    if bc is BoundaryCondition.DIRICHLET:
        if cfg.alpha <= 1.0:
            return None
        lower, upper = settings.bracket_eps * lam, lam / 2.0
    else:
        if cfg.x0 == 0:
            return lam
        lower, upper = lam / 2.0, lam
    # e^{-2κx₀} underflows for very large x₀ and the root sits on λ/2.
    if bc is BoundaryCondition.DIRICHLET and _secular(bc, cfg, upper) >= 0:
        return upper
    if bc is BoundaryCondition.NEUMANN and _secular(bc, cfg, lower) <= 0:
        return lower
    kappa = optimize.brentq(
        lambda k: _secular(bc, cfg, k),
        lower,
        upper,
        xtol=settings.xtol,
        rtol=settings.rtol,
        maxiter=settings.maxiter,
    )
    logging.debug("%s root kappa=%r for %s", bc.value, kappa, cfg)
    return kappa


def _inner_norm(bc: BoundaryCondition, kappa: float, x0: float) -> float:
    """Return ∫₀^{x₀} (f(κx)/f(κx₀))² dx with f = sinh or cosh."""
    a = kappa * x0
    if a == 0:
        return 0.0
    # Both closed forms in q = e^{-2a}, which underflows to 0 for a far delta.
    q = math.exp(-2.0 * a)
    gap = -math.expm1(-2.0 * a)
    if bc is BoundaryCondition.DIRICHLET:
        if a < _NORM_SERIES_THRESHOLD:
            # (coth a - a/sinh²a)/(2κ) = x₀(1/3 - 2a²/45 + ...)
            return x0 * (1.0 / 3.0 - 2.0 * a * a / 45.0)
        # coth a - a/sinh²a = (1 + q)/(1 - q) - 4aq/(1 - q)²
        return ((1.0 + q) / gap - 4.0 * a * q / (gap * gap)) / (2.0 * kappa)
    # tanh a + a/cosh²a = (1 - q)/(1 + q) + 4aq/(1 + q)²
    total = 1.0 + q
    return (gap / total + 4.0 * a * q / (total * total)) / (2.0 * kappa)


def _make_state(bc: BoundaryCondition, cfg: DeltaConfig, kappa: float) -> BoundState:
    a = kappa * cfg.x0
    norm = _inner_norm(bc, kappa, cfg.x0) + 1.0 / (2.0 * kappa)
    value = 1.0 / math.sqrt(norm)
    with np.errstate(over="ignore"):
        inner_scale = np.sinh(a) if bc is BoundaryCondition.DIRICHLET else np.cosh(a)
        outer = float(value * np.exp(a))
    inner = float(value / inner_scale) if inner_scale else INF
    return BoundState(
        energy=-kappa * kappa,
        kappa=kappa,
        amplitude_inner=inner,
        amplitude_outer=outer,
        value_at_delta=value,
        bc=bc,
        cfg=cfg,
    )


def bound_state_energy(
    bc: BoundaryCondition,
    cfg: DeltaConfig,
    *,
    settings: Optional[RootSettings] = None,
) -> Optional[BoundState]:
    """Solve the bound-state equation λG(x₀, x₀; E) = 1.

    The secular function κ ↦ λ(1 ∓ e^{-2κx₀}) - 2κ is bracketed on
    (ε, λ/2] for a Dirichlet wall and [λ/2, λ] for a Neumann wall and its
    root is found with Brent's method.

    Args:
        bc: The wall at the origin.
        cfg: The delta perturbation. x₀ = 0 gives E = -λ² for a Neumann wall
            and no bound state for a Dirichlet wall.
        settings: Root-finder tolerances.

    Returns: The bound state, or None when the Dirichlet coupling is at or
        below threshold (λx₀ ≤ 1). At λx₀ = 1 the inverse map gives E = 0,
        which is not an L² eigenvalue; see threshold_x0.
    """
    settings = settings or _DEFAULT_ROOT_SETTINGS
    kappa = _solve_kappa(bc, cfg, settings)
    if kappa is None:
        logging.debug("No %s bound state for alpha=%r", bc.value, cfg.alpha)
        return None
    return _make_state(bc, cfg, kappa)


def x0_of_energy(bc: BoundaryCondition, lam: float, energy: float) -> float:
    """Return the delta location at which the eigenvalue equals E.

    Dirichlet: x₀ = -ln(1 - 2κ/λ)/(2κ) on -λ²/4 < E ≤ 0, with the threshold
    value 1/λ at E = 0. Neumann: x₀ = -ln(2κ/λ - 1)/(2κ) on
    -λ² ≤ E < -λ²/4.

    Raises:
        DomainError: λ ≤ 0 or E lies outside the window for the given wall.
    """
    if not (math.isfinite(lam) and lam > 0):
        raise DomainError(f"lambda must be positive and finite, got {lam!r}")
    if not math.isfinite(energy):
        raise DomainError(f"E must be finite, got {energy!r}")
    quarter = -lam * lam / 4.0
    if bc is BoundaryCondition.DIRICHLET:
        if not quarter < energy <= 0:
            raise DomainError(
                f"Dirichlet energies lie in (-lambda^2/4, 0] = ({quarter}, 0], "
                f"got {energy!r}"
            )
        if energy == 0:
            return 1.0 / lam
        kappa = math.sqrt(-energy)
        return -math.log1p(-2.0 * kappa / lam) / (2.0 * kappa)
    if not -lam * lam <= energy < quarter:
        raise DomainError(
            f"Neumann energies lie in [-lambda^2, -lambda^2/4) = "
            f"[{-lam * lam}, {quarter}), got {energy!r}"
        )
    kappa = math.sqrt(-energy)
    return max(0.0, -math.log(2.0 * kappa / lam - 1.0) / (2.0 * kappa))


def _shape(bc: BoundaryCondition, kappa: float, x: float, x0: float) -> float:
    """Return f(κx)/f(κx₀) for x ≤ x₀ without overflow."""
    if x0 == 0:
        return 1.0
    decay = math.exp(-kappa * (x0 - x))
    if bc is BoundaryCondition.DIRICHLET:
        return decay * math.expm1(-2.0 * kappa * x) / math.expm1(-2.0 * kappa * x0)
    ratio = (1.0 + math.exp(-2.0 * kappa * x)) / (1.0 + math.exp(-2.0 * kappa * x0))
    return decay * ratio


def eigenfunction(state: BoundState, x: float) -> float:
    """Evaluate the normalized eigenfunction at x ≥ 0."""
    if not (math.isfinite(x) and x >= 0):
        raise DomainError(f"x must be nonnegative, got {x!r}")
    x0, kappa = state.cfg.x0, state.kappa
    if x >= x0:
        return state.value_at_delta * math.exp(-kappa * (x - x0))
    return state.value_at_delta * _shape(state.bc, kappa, x, x0)


def eigenfunction_derivative(state: BoundState, x: float, side: int = 1) -> float:
    """Evaluate ψ'(x) from the closed form.

    Args:
        state: A bound state.
        x: The point, x ≥ 0.
        side: At x = x₀, +1 selects ψ'(x₀⁺) and -1 selects ψ'(x₀⁻). Ignored
            elsewhere.

    Returns: The derivative. At x₀ the one-sided values differ by -λψ(x₀).
    """
    if side not in (-1, 1):
        raise DomainError("side must be -1 or +1")
    if not (math.isfinite(x) and x >= 0):
        raise DomainError(f"x must be nonnegative, got {x!r}")
    x0, kappa = state.cfg.x0, state.kappa
    if x > x0 or (x == x0 and side > 0):
        return -kappa * eigenfunction(state, x)
    # d/dx f(κx)/f(κx₀) = κ g(κx)/f(κx₀) with g the other hyperbolic function
    decay = math.exp(-kappa * (x0 - x))
    if state.bc is BoundaryCondition.DIRICHLET:
        ratio = (1.0 + math.exp(-2.0 * kappa * x)) / -math.expm1(-2.0 * kappa * x0)
    else:
        ratio = -math.expm1(-2.0 * kappa * x) / (1.0 + math.exp(-2.0 * kappa * x0))
    return state.value_at_delta * kappa * decay * ratio


def _sweep_point(
    bc: BoundaryCondition,
    lam: float,
    x0: float,
    settings: RootSettings,
    parameter: float,
) -> SweepPoint:
    if math.isinf(x0):
        return SweepPoint(parameter, asymptotic_energy(lam), True, asymptotic=True)
    cfg = DeltaConfig(lam, x0)
    at_threshold = math.isclose(cfg.alpha, 1.0, rel_tol=1e-12)
    if bc is BoundaryCondition.DIRICHLET and at_threshold:
        return SweepPoint(parameter, 0.0, False, threshold=True)
    state = bound_state_energy(bc, cfg, settings=settings)
    if state is None:
        return SweepPoint(parameter, None, False)
    return SweepPoint(parameter, state.energy, True)


def energy_sweep(
    bc: BoundaryCondition,
    fixed: str,
    fixed_value: float,
    grid: Sequence[float],
    *,
    settings: Optional[RootSettings] = None,
    workers: int = 1,
) -> List[SweepPoint]:
    """Evaluate the bound-state energy along a grid of λ or x₀ values.

    Args:
        bc: The wall at the origin.
        fixed: "lambda" to sweep x₀ at fixed λ, or "x0" to sweep λ at fixed x₀.
        fixed_value: The value of the fixed parameter. With fixed="x0" it may
            be math.inf, in which case every row is the asymptote -λ²/4.
        grid: The swept values. With fixed="lambda" they are x₀ values that
            may include 0 and math.inf; otherwise positive λ values.
        settings: Root-finder tolerances.
        workers: Number of threads to evaluate grid points on.

    Returns: One SweepPoint per grid value, in grid order. Dirichlet rows at
        λx₀ = 1 carry energy 0.0 with exists=False; rows below threshold
        carry energy None.

    Raises:
        DomainError: fixed is not "lambda" or "x0", or a value is invalid.
    """
    settings = settings or _DEFAULT_ROOT_SETTINGS
    if fixed not in ("lambda", "x0"):
        raise DomainError(f'fixed must be "lambda" or "x0", got {fixed!r}')
    if math.isnan(fixed_value) or fixed_value <= 0:
        raise DomainError(f"fixed value must be positive, got {fixed_value!r}")
    grid = [float(value) for value in grid]
    # x₀ = 0 is the limit operator; λ must stay positive.
    for value in grid:
        if math.isnan(value) or value < 0 or (value == 0 and fixed == "x0"):
            raise DomainError(f"invalid grid value {value!r}")
    if fixed == "lambda":
        if math.isinf(fixed_value):
            raise DomainError("lambda cannot be infinite")

        def evaluate(x0: float) -> SweepPoint:
            return _sweep_point(bc, fixed_value, x0, settings, x0)

    else:
        if any(math.isinf(value) for value in grid):
            raise DomainError("lambda grid values must be finite")

        def evaluate(lam: float) -> SweepPoint:
            return _sweep_point(bc, lam, fixed_value, settings, lam)

    return fan_out(evaluate, grid, workers)

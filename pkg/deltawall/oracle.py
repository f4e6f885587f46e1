"""Brute-force verifiers for the closed-form results.

None of these reuse the formula they check: eigenvalues come from
integrating the differential equation, resolvents from quadratures of the
heat kernel or of kernel products, and poles from a residual grid.

Functions:
    shooting_eigenvalue: Eigenvalue by ODE shooting with the delta jump.
    laplace_green: Free resolvent as the Laplace transform of the heat kernel.
    resolvent_identity_check: Defect of the first resolvent identity.
    semigroup_defect: Defect of the semigroup property of the heat kernel.
    quadrature_norm: ∫ψ² of a bound state by quadrature.
    grid_pole_scan: Local minima of the pole residual on a grid.
"""

from typing import (
    Callable,
    List,
    Optional,
    Sequence,
    Tuple,
)
import logging
import math

import numpy as np
from scipy import integrate, ndimage, optimize

from .errors import ConvergenceError, DomainError, QuadratureFailure
from .kernels import (
    BoundaryCondition,
    DeltaConfig,
    heat_kernel,
    perturbed_green,
)
from .settings import KernelSettings, QuadratureSettings, ShootingConfig
from .spectral import BoundState, eigenfunction

__all__ = (
    "ShootingConfig",
    "grid_pole_scan",
    "laplace_green",
    "quadrature_norm",
    "resolvent_identity_check",
    "semigroup_defect",
    "shooting_eigenvalue",
)

_DEFAULT_QUADRATURE = QuadratureSettings()
_DEFAULT_SHOOTING = ShootingConfig()

# The κ window searched by shooting, in units of λ. Every bound state of
# -d²/dx² - λδ on the half-line has κ ≤ λ.
_KAPPA_WINDOW = (1e-6, 1.0 + 1e-6)


def _integrate(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    settings: QuadratureSettings,
    points: Sequence[float] = (),
) -> float:
    """Integrate with QUADPACK and raise instead of warning."""
    inside = sorted({p for p in points if lower < p < upper})
    result = integrate.quad(
        func,
        lower,
        upper,
        epsabs=settings.epsabs,
        epsrel=settings.epsrel,
        limit=settings.limit,
        points=inside or None,
        full_output=1,
    )
    if len(result) > 3:
        raise QuadratureFailure(f"quadrature over [{lower}, {upper}]: {result[3]}")
    return result[0]


def _shoot(
    bc: BoundaryCondition, cfg: DeltaConfig, kappa: float, sc: ShootingConfig
) -> float:
    """Return the sign-carrying mismatch of the decaying tail at x_max.

    Beyond x₀ the solution is a·e^{κx} + b·e^{-κx} and ψ' + κψ = 2κa·e^{κx},
    so the mismatch changes sign exactly where the growing mode vanishes.
    """
    rate = kappa * kappa

    def rhs(_, state):
        return [state[1], rate * state[0]]

    options = {"method": "DOP853", "rtol": sc.rtol, "atol": sc.atol}
    if sc.step is not None:
        options["max_step"] = sc.step
    state = [0.0, 1.0] if bc is BoundaryCondition.DIRICHLET else [1.0, 0.0]
    if cfg.x0 > 0:
        solution = integrate.solve_ivp(rhs, (0.0, cfg.x0), state, **options)
        if not solution.success:
            raise ConvergenceError(f"inner integration failed: {solution.message}")
        state = solution.y[:, -1]
    psi, slope = state[0], state[1] - cfg.lam * state[0]
    x_max = sc.matching_point(cfg.x0, kappa)
    solution = integrate.solve_ivp(rhs, (cfg.x0, x_max), [psi, slope], **options)
    if not solution.success:
        raise ConvergenceError(f"outer integration failed: {solution.message}")
    psi, slope = solution.y[:, -1]
    return float((slope + kappa * psi) / math.hypot(psi, slope / kappa))


def shooting_eigenvalue(
    bc: BoundaryCondition,
    cfg: DeltaConfig,
    sc: Optional[ShootingConfig] = None,
) -> Optional[float]:
    """Find the eigenvalue by integrating -ψ'' = Eψ from the wall.

    The solution starts from ψ(0) = 0, ψ'(0) = 1 (Dirichlet) or ψ(0) = 1,
    ψ'(0) = 0 (Neumann), takes the jump ψ'(x₀⁺) = ψ'(x₀⁻) - λψ(x₀), and
    is matched to the decaying tail at x_max. The energy is bracketed in
    κ ∈ (0, λ] and located with Brent's method.

    Args:
        bc: The wall at the origin.
        cfg: The delta perturbation.
        sc: Integrator and search settings.

    Returns: The eigenvalue, or None when the mismatch does not change sign
        over the window.

    Raises:
        DomainError: An explicit x_max does not clear x₀ + 20/λ.
    """
    sc = sc or _DEFAULT_SHOOTING
    # κ = λ/2 is the estimate the explicit matching point must clear.
    if sc.x_max is not None and sc.x_max <= cfg.x0 + 20.0 / cfg.lam:
        raise DomainError(
            f"x_max = {sc.x_max} must exceed x0 + 10/kappa = {cfg.x0 + 20.0 / cfg.lam}"
        )
    lower, upper = (bound * cfg.lam for bound in _KAPPA_WINDOW)
    low_value = _shoot(bc, cfg, lower, sc)
    high_value = _shoot(bc, cfg, upper, sc)
    if low_value * high_value > 0:
        logging.debug("No sign change of the shooting mismatch for %s", cfg)
        return None
    kappa = optimize.brentq(
        lambda k: _shoot(bc, cfg, k, sc), lower, upper, xtol=sc.tol, maxiter=200
    )
    return -kappa * kappa


def laplace_green(
    bc: BoundaryCondition,
    x: float,
    y: float,
    energy: float,
    *,
    settings: Optional[QuadratureSettings] = None,
) -> float:
    """Compute the free resolvent as ∫₀^∞ e^{-|E|t} K_t(x, y) dt.

    The integral is split at t = 1. On [0, 1] the substitution t = s²
    removes the 1/√t singularity of the diagonal; [1, ∞) is truncated where
    the integrand bound drops below the cutoff.

    Raises:
        DomainError: E ≥ 0.
        QuadratureFailure: QUADPACK could not reach the tolerance.
    """
    settings = settings or _DEFAULT_QUADRATURE
    if not (math.isfinite(energy) and energy < 0):
        raise DomainError(f"E must be negative, got {energy!r}")
    rate = -energy

    def near(s: float) -> float:
        t = s * s
        return 2.0 * s * math.exp(-rate * t) * heat_kernel(bc, x, y, t)

    def far(t: float) -> float:
        return math.exp(-rate * t) * heat_kernel(bc, x, y, t)

    head = _integrate(near, 0.0, 1.0, settings)
    end = 1.0 + math.log(1.0 / settings.cutoff) / rate
    return head + _integrate(far, 1.0, end, settings)


def resolvent_identity_check(
    bc: BoundaryCondition,
    cfg: DeltaConfig,
    e1: float,
    e2: float,
    x: float,
    y: float,
    *,
    settings: Optional[QuadratureSettings] = None,
    kernel_settings: Optional[KernelSettings] = None,
) -> float:
    """Return |R(E1) - R(E2) - (E1 - E2)·R(E1)R(E2)| at (x, y).

    R is the perturbed resolvent kernel and the operator product is a
    quadrature over the intermediate coordinate.

    Raises:
        DomainError: E1 = E2, or an argument is invalid.
        PoleProximityError: E1 or E2 is at the eigenvalue.
    """
    settings = settings or _DEFAULT_QUADRATURE
    if e1 == e2:
        raise DomainError("the resolvent identity needs E1 != E2")

    def resolvent(a: float, b: float, energy: float) -> float:
        return perturbed_green(bc, cfg, a, b, energy, settings=kernel_settings)

    decay = math.sqrt(-e1) + math.sqrt(-e2) if e1 < 0 and e2 < 0 else None
    if decay is None:
        raise DomainError("the resolvent identity is checked for E1, E2 < 0")
    end = max(x, y, cfg.x0) + math.log(1.0 / settings.cutoff) / decay
    product = _integrate(
        lambda z: resolvent(x, z, e1) * resolvent(z, y, e2),
        0.0,
        end,
        settings,
        points=(x, y, cfg.x0),
    )
    return abs(resolvent(x, y, e1) - resolvent(x, y, e2) - (e1 - e2) * product)


def semigroup_defect(
    bc: BoundaryCondition,
    x: float,
    y: float,
    t: float,
    s: float,
    *,
    settings: Optional[QuadratureSettings] = None,
) -> float:
    """Return |∫₀^∞ K_t(x, z)K_s(z, y) dz - K_{t+s}(x, y)|."""
    settings = settings or _DEFAULT_QUADRATURE
    if not (t > 0 and s > 0):
        raise DomainError("semigroup times must be positive")
    width = 2.0 * math.sqrt(max(t, s) * math.log(1.0 / settings.cutoff))
    end = max(x, y) + 2.0 * width
    product = _integrate(
        lambda z: heat_kernel(bc, x, z, t) * heat_kernel(bc, z, y, s),
        0.0,
        end,
        settings,
        points=(x, y),
    )
    return abs(product - heat_kernel(bc, x, y, t + s))


def quadrature_norm(
    state: BoundState, *, settings: Optional[QuadratureSettings] = None
) -> float:
    """Return ∫₀^∞ ψ(x)² dx by quadrature."""
    settings = settings or _DEFAULT_QUADRATURE
    x0 = state.cfg.x0
    end = x0 + math.log(1.0 / settings.cutoff) / state.kappa
    return _integrate(
        lambda x: eigenfunction(state, x) ** 2, 0.0, end, settings, points=(x0,)
    )


def _scan_residual(
    sign: int, alpha: float, z1: np.ndarray, z2: np.ndarray
) -> np.ndarray:
    """Max-norm of the pole system divided by 1 + αe^{z2}."""
    amplitude = alpha * np.exp(z2)
    first = alpha + sign * amplitude * np.cos(z1) + z2
    second = amplitude * np.sin(z1) + sign * z1
    return np.maximum(np.abs(first), np.abs(second)) / (1.0 + amplitude)


def grid_pole_scan(
    bc: BoundaryCondition,
    alpha: float,
    z1_range: Tuple[float, float],
    z2_range: Tuple[float, float],
    resolution: int,
    *,
    threshold: float = 0.1,
) -> List[Tuple[float, float]]:
    """Locate pole candidates as local minima of the residual on a grid.

    The grid has resolution × resolution cell centres. A candidate is an
    interior point whose residual (the pole system divided by 1 + αe^{z2})
    is the smallest in its 3 × 3 neighbourhood and below threshold. Minima
    on the edge of the window are dropped, which also removes the trivial
    root z1 = z2 = 0 and points on the imaginary axis.

    Args:
        bc: The wall at the origin.
        alpha: The dimensionless coupling λx₀.
        z1_range: The (lower, upper) bounds of z1.
        z2_range: The (lower, upper) bounds of z2.
        resolution: Points per axis, at least 100.
        threshold: Largest residual of a reported candidate.

    Returns: Candidate (z1, z2) pairs ordered by z1.
    """
    if resolution < 100:
        raise DomainError(f"resolution must be at least 100, got {resolution!r}")
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    axes = []
    for lower, upper in (z1_range, z2_range):
        if not (math.isfinite(lower) and math.isfinite(upper) and lower < upper):
            raise DomainError(f"invalid scan range ({lower}, {upper})")
        spacing = (upper - lower) / resolution
        axes.append(lower + (np.arange(resolution) + 0.5) * spacing)
    z1, z2 = np.meshgrid(*axes, indexing="ij")
    residual = _scan_residual(bc.sign, alpha, z1, z2)
    minimal = residual == ndimage.minimum_filter(residual, size=3, mode="nearest")
    minimal[0, :] = minimal[-1, :] = minimal[:, 0] = minimal[:, -1] = False
    rows, columns = np.nonzero(minimal & (residual < threshold))
    candidates = sorted(
        (float(axes[0][i]), float(axes[1][j])) for i, j in zip(rows, columns)
    )
    logging.debug("grid scan found %d candidates", len(candidates))
    return candidates

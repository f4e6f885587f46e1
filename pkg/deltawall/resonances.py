"""Resonance poles of the analytically continued resolvent.

Poles solve λ(1 ∓ e^{2ikx₀}) = -2ik. Writing 2kx₀ = z1 - i·z2 with z2 > 0
(lower half of the momentum plane) turns this into two real equations in
(z1, z2) that depend on λ and x₀ only through α = λx₀:

    Dirichlet:  α(1 - e^{z2} cos z1) + z2 = 0,  α e^{z2} sin z1 - z1 = 0
    Neumann:    α(1 + e^{z2} cos z1) + z2 = 0,  α e^{z2} sin z1 + z1 = 0

Poles come in mirror pairs ±z1 - i·z2; only the z1 > 0 member is stored.
Each branch n holds at most one pole: Dirichlet poles have sin z1 > 0 and
lie in (2πn, 2πn + π), Neumann poles have sin z1 < 0 and lie in
(2πn + π, 2πn + 2π).

Classes:
    ResonancePole: One converged pole with its momentum and energy images.
    AntiboundState: A virtual state on the negative imaginary k-axis.
    ResonanceReport: Poles, skipped branches and failures of one search.

Functions:
    pole_residual: The two residuals of the pole system.
    balanced_residual: The residuals divided by 1 + αe^{z2}, overflow-free.
    branch_interval: The z1 interval hosting branch n.
    find_resonances: Up to n_max poles ordered by z1.
    scan_branches: The full report behind find_resonances.
    find_antibound: The Dirichlet virtual state for α < 1.
    to_energy: The complex energy E = k² of a pole.
"""

from typing import (
    List,
    Optional,
    Tuple,
)
import dataclasses
import logging
import math

import numpy as np
from scipy import optimize, special

from .errors import ConvergenceError, DomainError
from .fanout import fan_out
from .kernels import BoundaryCondition, DeltaConfig
from .settings import ResonanceSettings

__all__ = (
    "AntiboundState",
    "ResonancePole",
    "ResonanceReport",
    "balanced_residual",
    "branch_interval",
    "find_antibound",
    "find_resonances",
    "pole_residual",
    "scan_branches",
    "to_energy",
)

_DEFAULT_RESONANCE_SETTINGS = ResonanceSettings()

# Smallest Newton damping factor tried before a step is taken as is.
_MIN_DAMPING = 2.0 ** -12

# Relative distance kept from the zeros of sin z1 when sampling a branch.
_EDGE_INSET = 1e-8


@dataclasses.dataclass(frozen=True)
class ResonancePole:
    """A resonance pole in dimensionless coordinates.

    Attributes:
        bc: The wall at the origin.
        alpha: The dimensionless coupling λx₀.
        x0: The delta location, which sets the momentum scale.
        branch: The branch index n ≥ 0.
        z1: Real part of 2kx₀, positive.
        z2: Minus the imaginary part of 2kx₀, positive.
        residual: Max-norm of pole_residual at (z1, z2).
    """

    bc: BoundaryCondition
    alpha: float
    x0: float
    branch: int
    z1: float
    z2: float
    residual: float

    @property
    def k(self) -> complex:
        """The pole in the momentum plane, (z1 - i·z2)/(2x₀)."""
        return complex(self.z1, -self.z2) / (2.0 * self.x0)

    @property
    def energy(self) -> complex:
        """The complex energy E = E_R - iΓ/2."""
        return to_energy(self)

    @property
    def resonance_energy(self) -> float:
        """E_R = (z1² - z2²)/(4x₀²)."""
        return (self.z1 ** 2 - self.z2 ** 2) / (4.0 * self.x0 ** 2)

    @property
    def width(self) -> float:
        """Γ = z1·z2/x₀²."""
        return self.z1 * self.z2 / self.x0 ** 2

    @property
    def mirror(self) -> Tuple[float, float]:
        """The (z1, z2) of the mirror pole -z1 - i·z2."""
        return (-self.z1, self.z2)


@dataclasses.dataclass(frozen=True)
class AntiboundState:
    """A virtual state, a pole at k = -i·z2/(2x₀) with z2 > 0.

    It solves the same continued equation as the resonances but sits on the
    negative imaginary axis, so it is neither a resonance nor an eigenvalue.
    """

    bc: BoundaryCondition
    alpha: float
    x0: float
    z2: float

    @property
    def k(self) -> complex:
        return complex(0.0, -self.z2 / (2.0 * self.x0))

    @property
    def energy(self) -> float:
        return -((self.z2 / (2.0 * self.x0)) ** 2)


@dataclasses.dataclass
class ResonanceReport:
    """Everything one pole search found.

    Attributes:
        poles: Accepted poles ordered by z1.
        skipped: Branches with no admissible seed, such as the lowest
            Dirichlet branch while the bound state exists.
        failures: Per-branch ConvergenceErrors; they are reported, not raised.
        antibound: The virtual state, when there is one.
    """

    poles: List[ResonancePole] = dataclasses.field(default_factory=list)
    skipped: List[int] = dataclasses.field(default_factory=list)
    failures: List[ConvergenceError] = dataclasses.field(default_factory=list)
    antibound: Optional[AntiboundState] = None


def pole_residual(
    bc: BoundaryCondition, alpha: float, z1: float, z2: float
) -> Tuple[float, float]:
    """Return the two residuals of the pole system at (z1, z2).

    Both vanish exactly at a pole. The point z1 = 0, z2 = -2κx₀ is the bound
    state of the same continued equation. Overflowing terms give inf.
    """
    sign = bc.sign
    try:
        amplitude = alpha * math.exp(z2)
    except OverflowError:
        return (math.inf, math.inf)
    first = alpha + sign * amplitude * math.cos(z1) + z2
    second = amplitude * math.sin(z1) + sign * z1
    return (first, second)


def _balanced(sign: int, alpha: float, z1, z2):
    """Residuals divided by 1 + αe^{z2}, for scalars or arrays."""
    shift = z2 + math.log(alpha)
    # p = αe^{z2}/(1 + αe^{z2}), w = 1/(1 + αe^{z2})
    p = special.expit(shift)
    w = special.expit(-shift)
    first = w * (alpha + z2) + sign * p * np.cos(z1)
    second = p * np.sin(z1) + sign * w * z1
    return first, second


def balanced_residual(
    bc: BoundaryCondition, alpha: float, z1: float, z2: float
) -> Tuple[float, float]:
    """Return pole_residual divided by 1 + αe^{z2}.

    The weights are logistic functions of z2 + ln α, so the value is finite
    for every z2 and has the same zeros as pole_residual.
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    first, second = _balanced(bc.sign, alpha, z1, z2)
    return (float(first), float(second))


def _balanced_jacobian(sign: int, alpha: float, z1: float, z2: float) -> np.ndarray:
    shift = z2 + math.log(alpha)
    p = float(special.expit(shift))
    w = float(special.expit(-shift))
    sin, cos = math.sin(z1), math.cos(z1)
    pw = p * w
    return np.array(
        [
            [-sign * p * sin, -pw * (alpha + z2) + w + sign * pw * cos],
            [p * cos + sign * w, pw * sin - sign * pw * z1],
        ]
    )


def branch_interval(bc: BoundaryCondition, n: int) -> Tuple[float, float]:
    """Return the open z1 interval of branch n."""
    if n < 0:
        raise DomainError(f"branch must be nonnegative, got {n!r}")
    start = 2.0 * math.pi * n + (0.0 if bc is BoundaryCondition.DIRICHLET else math.pi)
    return (start, start + math.pi)


def _in_branch(bc: BoundaryCondition, z1: float) -> bool:
    phase = math.fmod(z1, 2.0 * math.pi)
    if bc is BoundaryCondition.DIRICHLET:
        return 0.0 < phase < math.pi
    return math.pi < phase < 2.0 * math.pi


def _reduced_z2(sign: int, alpha: float, z1):
    """z2 from the second equation: ln(∓z1/(α sin z1)), nan where undefined."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.log(-sign * z1 / (alpha * np.sin(z1)))


def _reduced(sign: int, alpha: float, z1):
    """The first equation after eliminating z2: z1·cot z1 - α - z2(z1)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return z1 / np.tan(z1) - alpha - _reduced_z2(sign, alpha, z1)


def _admissible_pieces(
    bc: BoundaryCondition, alpha: float, n: int
) -> List[Tuple[float, float]]:
    """Sub-intervals of branch n on which z2(z1) ≥ 0, i.e. α|sin z1| ≤ z1.

    With t = z1 - start, |sin z1| = sin t and α sin t - z1 is concave on
    (0, π) with its peak at t = arccos(1/α), so the excluded middle part is
    bounded by at most two roots.
    """
    lower, upper = branch_interval(bc, n)

    def excess(t: float) -> float:
        return alpha * math.sin(t) - (lower + t)

    peak = math.acos(1.0 / alpha) if alpha > 1 else 0.0
    if excess(peak) <= 0:
        return [(lower, upper)]
    pieces = []
    if lower > 0:
        pieces.append((lower, lower + optimize.brentq(excess, 0.0, peak)))
    pieces.append((lower + optimize.brentq(excess, peak, math.pi), upper))
    return pieces


def _seeds(
    bc: BoundaryCondition, alpha: float, n: int, settings: ResonanceSettings
) -> List[Tuple[float, float]]:
    """Roots of the scalar reduction on branch n with z2 > 0."""
    sign = bc.sign
    lower, upper = branch_interval(bc, n)
    seeds = []
    for start, stop in _admissible_pieces(bc, alpha, n):
        # The reduction diverges where sin z1 = 0; the z2 = 0 ends are kept.
        inset = (stop - start) * _EDGE_INSET
        z1 = np.linspace(
            start + inset if start == lower else start,
            stop - inset if stop == upper else stop,
            settings.seed_samples,
        )
        values = _reduced(sign, alpha, z1)
        finite = np.isfinite(values)
        for i in range(len(z1) - 1):
            if not (finite[i] and finite[i + 1]):
                continue
            if values[i] == 0:
                root = float(z1[i])
            elif values[i] * values[i + 1] < 0:
                root = optimize.brentq(
                    lambda z: float(_reduced(sign, alpha, z)),
                    float(z1[i]),
                    float(z1[i + 1]),
                    xtol=1e-15,
                )
            else:
                continue
            z2 = float(_reduced_z2(sign, alpha, root))
            if z2 > 0:
                seeds.append((root, z2))
    return seeds


def _asymptotic_seed(
    bc: BoundaryCondition, alpha: float, n: int
) -> Tuple[float, float]:
    """Large-n estimate: cot z1 ≈ (α + z2)/z1 near the branch midpoint."""
    lower, upper = branch_interval(bc, n)
    centre = (lower + upper) / 2.0
    z2 = math.log(centre / alpha) if centre > alpha else 0.5
    return (centre - (alpha + z2) / centre, z2)


def _max_norm(residual) -> float:
    return max(abs(residual[0]), abs(residual[1]))


def _raw_norm(bc: BoundaryCondition, alpha: float, z1: float, z2: float) -> float:
    return _max_norm(pole_residual(bc, alpha, z1, z2))


def _newton(
    bc: BoundaryCondition,
    alpha: float,
    seed: Tuple[float, float],
    branch: int,
    settings: ResonanceSettings,
) -> Tuple[float, float]:
    """Refine a seed with damped Newton on the balanced residual."""
    sign = bc.sign
    z = np.array(seed, dtype=float)
    residual = np.array(_balanced(sign, alpha, z[0], z[1]))
    norm = _max_norm(residual)
    for iteration in range(1, settings.newton_maxiter + 1):
        if z[1] <= settings.log_domain_z2:
            if _raw_norm(bc, alpha, z[0], z[1]) <= settings.newton_tol:
                return (float(z[0]), float(z[1]))
        elif norm <= settings.newton_tol:
            return (float(z[0]), float(z[1]))
        try:
            jacobian = _balanced_jacobian(sign, alpha, z[0], z[1])
            step = np.linalg.solve(jacobian, -residual)
        except np.linalg.LinAlgError as e:
            raise ConvergenceError(
                f"singular Jacobian at {tuple(z)}",
                branch=branch,
                residual=norm,
                iterations=iteration,
            ) from e
        damping = 1.0
        while True:
            trial = z + damping * step
            trial_residual = np.array(_balanced(sign, alpha, trial[0], trial[1]))
            trial_norm = _max_norm(trial_residual)
            if trial_norm < norm or damping <= _MIN_DAMPING:
                break
            damping /= 2.0
        logging.debug(
            "branch %d iteration %d: z=%r residual=%.3e damping=%g",
            branch,
            iteration,
            tuple(trial),
            trial_norm,
            damping,
        )
        z, residual, norm = trial, trial_residual, trial_norm
        if not np.all(np.isfinite(z)):
            break
        if np.max(np.abs(damping * step)) <= settings.step_tol:
            return (float(z[0]), float(z[1]))
    raise ConvergenceError(
        f"damped Newton did not converge on branch {branch} from seed {seed}",
        branch=branch,
        residual=norm,
        iterations=settings.newton_maxiter,
    )


def _search_branch(
    bc: BoundaryCondition,
    cfg: DeltaConfig,
    n: int,
    settings: ResonanceSettings,
) -> Optional[ResonancePole]:
    """Find the pole of branch n.

    Returns: The pole, or None when the branch has no admissible seed.

    Raises:
        ConvergenceError: Every seed failed to converge to an admissible pole.
    """
    alpha = cfg.alpha
    seeds = _seeds(bc, alpha, n, settings)
    if not seeds:
        return None
    best: Optional[ConvergenceError] = None
    for seed in seeds + [_asymptotic_seed(bc, alpha, n)]:
        try:
            z1, z2 = _newton(bc, alpha, seed, n, settings)
        except ConvergenceError as e:
            logging.debug("%s", e)
            if best is None or e.residual < best.residual:
                best = e
            continue
        residual = _raw_norm(bc, alpha, z1, z2)
        if z1 > 0 and z2 > 0 and _in_branch(bc, z1) and residual <= settings.accept_tol:
            return ResonancePole(bc, alpha, cfg.x0, n, z1, z2, residual)
        logging.debug(
            "branch %d: rejected root (%r, %r) with residual %.3e", n, z1, z2, residual
        )
        if best is None or residual < best.residual:
            best = ConvergenceError(
                f"branch {n}: root ({z1!r}, {z2!r}) is not an admissible pole",
                branch=n,
                residual=residual,
            )
    raise best


def find_antibound(bc: BoundaryCondition, cfg: DeltaConfig) -> Optional[AntiboundState]:
    """Find the virtual state on the negative imaginary k-axis.

    Only a Dirichlet wall below threshold (α < 1) has one: the root u > 0 of
    α(1 - e^u) + u = 0.
    """
    alpha = cfg.alpha
    if bc is BoundaryCondition.NEUMANN or not 0 < alpha < 1:
        return None

    def equation(u: float) -> float:
        return -alpha * math.expm1(u) + u

    upper = 1.0
    while equation(upper) > 0:
        upper *= 2.0
    u = optimize.brentq(equation, upper / 2.0 if upper > 1 else 1e-300, upper)
    return AntiboundState(bc, alpha, cfg.x0, u)


def scan_branches(
    bc: BoundaryCondition,
    cfg: DeltaConfig,
    n_max: int,
    *,
    settings: Optional[ResonanceSettings] = None,
    workers: int = 1,
) -> ResonanceReport:
    """Search branches 0, 1, ... for resonance poles.

    Up to n_max + settings.extra_branches branches are searched so that
    skipped branches do not shorten the list.

    Args:
        bc: The wall at the origin.
        cfg: The delta perturbation; x₀ must be positive.
        n_max: The number of poles wanted.
        settings: Seeding and tolerance settings.
        workers: Number of threads to search branches on.

    Returns: A ResonanceReport with at most n_max poles ordered by z1.
    """
    settings = settings or _DEFAULT_RESONANCE_SETTINGS
    if n_max < 1:
        raise DomainError(f"n_max must be at least 1, got {n_max!r}")
    if cfg.x0 <= 0:
        raise DomainError("resonances need x0 > 0")

    def search(n: int):
        try:
            return _search_branch(bc, cfg, n, settings)
        except ConvergenceError as e:
            return e

    report = ResonanceReport(antibound=find_antibound(bc, cfg))
    outcomes = fan_out(search, range(n_max + settings.extra_branches), workers)
    for n, outcome in enumerate(outcomes):
        if len(report.poles) == n_max:
            break
        if outcome is None:
            logging.warning(
                "%s branch %d has no resonance for alpha=%r", bc.value, n, cfg.alpha
            )
            report.skipped.append(n)
        elif isinstance(outcome, ConvergenceError):
            logging.warning("%s", outcome)
            report.failures.append(outcome)
        else:
            report.poles.append(outcome)
    report.poles.sort(key=lambda pole: pole.z1)
    return report


def find_resonances(
    bc: BoundaryCondition,
    cfg: DeltaConfig,
    n_max: int,
    *,
    settings: Optional[ResonanceSettings] = None,
    workers: int = 1,
) -> List[ResonancePole]:
    """Return up to n_max resonance poles ordered by increasing z1.

    Skipped branches and per-branch convergence failures are logged; use
    scan_branches to inspect them.
    """
    return scan_branches(bc, cfg, n_max, settings=settings, workers=workers).poles


def to_energy(pole: ResonancePole) -> complex:
    """Return E = ((z1² - z2²) - 2i·z1·z2)/(4x₀²)."""
    scale = 4.0 * pole.x0 ** 2
    return complex(pole.z1 ** 2 - pole.z2 ** 2, -2.0 * pole.z1 * pole.z2) / scale

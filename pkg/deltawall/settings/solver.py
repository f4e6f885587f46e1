"""Settings for the root finders and the resonance pole search.

Classes:
    RootSettings: Tolerances for the bracketed bound-state root finder.
    KernelSettings: Guards used when evaluating resolvent kernels.
    ResonanceSettings: Seeding, damping and acceptance settings for the
        per-branch pole search.
"""

import sys

from ..dataclass import dataclass
from ..errors import DomainError

__all__ = (
    "KernelSettings",
    "ResonanceSettings",
    "RootSettings",
)


@dataclass(frozen=True)
class RootSettings:
    """Settings for the bound-state root finder.

    Settings:
        xtol: Absolute tolerance on κ passed to Brent's method.
        rtol: Relative tolerance on κ passed to Brent's method.
        maxiter: Iteration cap for Brent's method.
        bracket_eps: Offset of the lower Dirichlet bracket from κ = 0, in
            units of λ.
    """

    xtol: float = 1e-15
    rtol: float = 8.9e-16
    maxiter: int = 200
    bracket_eps: float = 1e-14

    def __post_init__(self) -> None:
        if self.xtol <= 0 or self.bracket_eps <= 0:
            raise DomainError("root tolerances must be positive")
        if self.rtol < 4 * sys.float_info.epsilon:
            raise DomainError("rtol cannot be below four machine epsilons")
        if self.maxiter < 1:
            raise DomainError("maxiter must be at least 1")


@dataclass(frozen=True)
class KernelSettings:
    """Settings for the resolvent kernels.

    Settings:
        pole_guard: Smallest admissible |1 - λG(x₀, x₀; E)| before the Krein
            formula refuses to evaluate.
    """

    pole_guard: float = 1e-13

    def __post_init__(self) -> None:
        if self.pole_guard <= 0:
            raise DomainError("pole_guard must be positive")


@dataclass(frozen=True)
class ResonanceSettings:
    """Settings for the resonance pole search.

    Settings:
        newton_maxiter: Iteration cap of the damped Newton refinement.
        newton_tol: Max-norm residual at which Newton stops.
        step_tol: Step length at which Newton stops.
        accept_tol: Largest max-norm residual of a reported pole.
        seed_samples: Number of samples per admissible part of a branch used
            to locate sign changes of the scalar reduction.
        extra_branches: How many branches beyond n_max may be searched to
            make up for skipped ones.
        log_domain_z2: Above this z2 the raw residual is not formed and the
            balanced residual is used for every decision.
    """

    newton_maxiter: int = 200
    newton_tol: float = 1e-12
    step_tol: float = 1e-13
    accept_tol: float = 1e-10
    seed_samples: int = 400
    extra_branches: int = 4
    log_domain_z2: float = 50.0

    def __post_init__(self) -> None:
        if self.newton_maxiter < 1:
            raise DomainError("newton_maxiter must be at least 1")
        if min(self.newton_tol, self.step_tol, self.accept_tol) <= 0:
            raise DomainError("resonance tolerances must be positive")
        if self.seed_samples < 8:
            raise DomainError("seed_samples must be at least 8")
        if self.extra_branches < 0:
            raise DomainError("extra_branches cannot be negative")

import pytest

from deltawall.errors import DomainError, QuadratureFailure
from deltawall.kernels import BoundaryCondition, DeltaConfig, free_green
from deltawall.oracle import (
    ShootingConfig,
    grid_pole_scan,
    laplace_green,
    quadrature_norm,
    resolvent_identity_check,
    semigroup_defect,
    shooting_eigenvalue,
)
from deltawall.settings import QuadratureSettings
from deltawall.spectral import bound_state_energy

D = BoundaryCondition.DIRICHLET
N = BoundaryCondition.NEUMANN

KERNEL_POINTS = [
    (0.5, 0.5, -1.0),
    (0.2, 1.5, -0.25),
    (1.0, 2.0, -4.0),
    (0.0, 1.0, -1.0),
    (3.0, 0.3, -0.5),
    (1.0, 1.0, -0.1),
    (0.05, 0.05, -2.0),
    (2.5, 2.5, -9.0),
    (0.7, 4.0, -0.3),
]

RESOLVENT_CASES = [
    (D, 2.0, 1.0, -3.0, -5.0, 0.5, 1.5),
    (D, 1.5, 2.0, -0.2, -1.0, 1.0, 3.0),
    (D, 0.5, 1.0, -0.5, -0.1, 0.3, 0.3),
    (D, 3.0, 0.5, -1.0, -4.0, 2.0, 0.1),
    (N, 1.0, 1.0, -0.1, -2.0, 0.5, 1.5),
    (N, 2.0, 0.5, -5.0, -1.0, 0.2, 0.9),
    (N, 0.5, 3.0, -0.05, -0.3, 3.0, 3.0),
    (N, 1.2, 0.0, -0.5, -3.0, 0.4, 1.0),
]

SEMIGROUP_CASES = [
    (D, 0.5, 1.0, 0.5, 1.0),
    (D, 1.0, 1.0, 0.1, 0.2),
    (D, 0.0, 2.0, 1.0, 1.0),
    (D, 3.0, 0.2, 2.0, 0.5),
    (N, 0.5, 1.0, 0.5, 1.0),
    (N, 0.0, 0.0, 0.3, 0.7),
    (N, 2.0, 2.5, 1.5, 0.05),
    (N, 1.0, 4.0, 0.8, 3.0),
]


def test_shooting_matches_closed_form(bc, coupling_grid):
    for lam, x0 in coupling_grid:
        cfg = DeltaConfig(lam, x0)
        state = bound_state_energy(bc, cfg)
        shot = shooting_eigenvalue(bc, cfg)
        if state is None:
            assert shot is None, cfg
        else:
            assert shot == pytest.approx(state.energy, abs=1e-8), cfg


def test_shooting_at_the_wall():
    energy = shooting_eigenvalue(N, DeltaConfig(1.0, 0.0))
    assert energy == pytest.approx(-1.0, abs=1e-8)
    assert shooting_eigenvalue(D, DeltaConfig(1.0, 0.0)) is None


def test_shooting_with_fixed_matching_point():
    cfg = DeltaConfig(2.0, 1.0)
    sc = ShootingConfig(x_max=60.0, step=0.05)
    assert shooting_eigenvalue(N, cfg, sc) == pytest.approx(
        bound_state_energy(N, cfg).energy, abs=1e-8
    )


@pytest.mark.parametrize("x, y, energy", KERNEL_POINTS)
def test_laplace_transform_of_heat_kernel(bc, x, y, energy):
    assert abs(laplace_green(bc, x, y, energy) - free_green(bc, x, y, energy)) <= 1e-6


def test_laplace_transform_needs_negative_energy():
    with pytest.raises(DomainError):
        laplace_green(D, 1.0, 1.0, 0.5)


def test_quadrature_failure_is_raised():
    with pytest.raises(QuadratureFailure):
        settings = QuadratureSettings(limit=1, epsabs=1e-15, epsrel=1e-14)
        laplace_green(N, 1.0, 1.0, -1e-4, settings=settings)


@pytest.mark.parametrize("bc, lam, x0, e1, e2, x, y", RESOLVENT_CASES)
def test_resolvent_identity(bc, lam, x0, e1, e2, x, y):
    assert resolvent_identity_check(bc, DeltaConfig(lam, x0), e1, e2, x, y) <= 1e-6


def test_resolvent_identity_needs_distinct_energies():
    with pytest.raises(DomainError):
        resolvent_identity_check(D, DeltaConfig(1.0, 1.0), -1.0, -1.0, 0.5, 0.5)


@pytest.mark.parametrize("bc, x, y, t, s", SEMIGROUP_CASES)
def test_semigroup_property(bc, x, y, t, s):
    assert semigroup_defect(bc, x, y, t, s) <= 1e-8


def test_quadrature_norm(bc):
    for cfg in (DeltaConfig(2.0, 1.0), DeltaConfig(1.1, 3.0), DeltaConfig(5.0, 0.3)):
        state = bound_state_energy(bc, cfg)
        assert quadrature_norm(state) == pytest.approx(1.0, abs=1e-8)


def test_grid_scan_rejects_coarse_grids():
    with pytest.raises(DomainError):
        grid_pole_scan(D, 2.0, (0.0, 10.0), (0.0, 3.0), 50)
    with pytest.raises(DomainError):
        grid_pole_scan(D, 2.0, (10.0, 0.0), (0.0, 3.0), 200)


def test_grid_scan_ignores_the_trivial_root():
    candidates = grid_pole_scan(D, 2.0, (0.0, 6.0), (0.0, 3.0), 200)
    assert candidates == []


def test_explicit_matching_point_must_clear_the_decay_length():
    with pytest.raises(DomainError):
        shooting_eigenvalue(N, DeltaConfig(2.0, 1.0), ShootingConfig(x_max=5.0))


def test_quadrature_norm_of_a_well_separated_delta(bc):
    state = bound_state_energy(bc, DeltaConfig(20.0, 2.0))
    assert state.kappa * state.cfg.x0 > 15
    assert quadrature_norm(state) == pytest.approx(1.0, abs=1e-8)

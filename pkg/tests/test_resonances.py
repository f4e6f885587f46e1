import math

import numpy as np
import pytest

from deltawall.errors import DomainError
from deltawall.kernels import BoundaryCondition, DeltaConfig, green_continued
from deltawall.oracle import grid_pole_scan
from deltawall.resonances import (
    balanced_residual,
    branch_interval,
    find_antibound,
    find_resonances,
    pole_residual,
    scan_branches,
    to_energy,
)
from deltawall.settings import ResonanceSettings

D = BoundaryCondition.DIRICHLET
N = BoundaryCondition.NEUMANN


@pytest.fixture(
    params=[(D, DeltaConfig(2.0, 1.0)), (N, DeltaConfig(1.0, 1.0))],
    ids=["dirichlet-alpha-2", "neumann-alpha-1"],
)
def case(request):
    return request.param


def test_poles_converge(case):
    bc, cfg = case
    poles = find_resonances(bc, cfg, 5)
    assert len(poles) == 5
    for pole in poles:
        assert pole.residual <= 1e-10
        assert max(map(abs, pole_residual(bc, cfg.alpha, pole.z1, pole.z2))) <= 1e-10
        assert abs(green_continued(bc, cfg, pole.k) - 1.0) <= 1e-9
        lower, upper = branch_interval(bc, pole.branch)
        assert lower < pole.z1 < upper
        assert pole.z2 > 0


def test_poles_are_ordered_and_one_per_branch(case):
    bc, cfg = case
    poles = find_resonances(bc, cfg, 5)
    assert [p.z1 for p in poles] == sorted(p.z1 for p in poles)
    assert len({p.branch for p in poles}) == 5


def test_dirichlet_lowest_branch_is_skipped():
    report = scan_branches(D, DeltaConfig(2.0, 1.0), 5)
    assert report.skipped == [0]
    assert [p.branch for p in report.poles] == [1, 2, 3, 4, 5]
    assert report.failures == []


def test_neumann_lowest_branch_hosts_a_pole():
    poles = find_resonances(N, DeltaConfig(1.0, 1.0), 5)
    assert [p.branch for p in poles] == [0, 1, 2, 3, 4]


def test_first_dirichlet_pole():
    pole = find_resonances(D, DeltaConfig(2.0, 1.0), 3)[0]
    assert pole.z1 == pytest.approx(7.42, abs=0.05)
    assert pole.z2 == pytest.approx(1.40, abs=0.05)


def test_grid_scan_confirms_every_pole(case):
    bc, cfg = case
    poles = find_resonances(bc, cfg, 5)
    z1_range = (0.0, max(p.z1 for p in poles) + 1.0)
    z2_range = (0.0, max(p.z2 for p in poles) + 1.0)
    resolution = 400
    candidates = grid_pole_scan(bc, cfg.alpha, z1_range, z2_range, resolution)
    spacing = max(z1_range[1], z2_range[1]) / resolution
    assert len(candidates) == len(poles)
    for pole, (z1, z2) in zip(poles, candidates):
        assert abs(pole.z1 - z1) <= 2 * spacing
        assert abs(pole.z2 - z2) <= 2 * spacing


def test_poles_depend_on_alpha_only():
    near = find_resonances(N, DeltaConfig(2.0, 1.0), 3)
    far = find_resonances(N, DeltaConfig(0.5, 4.0), 3)
    for a, b in zip(near, far):
        assert (a.z1, a.z2) == pytest.approx((b.z1, b.z2), rel=1e-10)
        assert b.k == pytest.approx(a.k / 4.0, rel=1e-10)


def test_energy_and_width():
    pole = find_resonances(N, DeltaConfig(1.0, 2.0), 1)[0]
    assert to_energy(pole) == pytest.approx(pole.k ** 2)
    assert pole.energy == to_energy(pole)
    assert pole.resonance_energy == pytest.approx(pole.energy.real)
    assert pole.width == pytest.approx(-2.0 * pole.energy.imag)
    assert pole.width > 0
    assert pole.mirror == (-pole.z1, pole.z2)


@pytest.mark.parametrize(
    "bc, alpha, poles",
    [(D, 50.0, 5), (D, 60.0, 5), (N, 20.0, 5)],
    ids=["dirichlet-alpha-50", "dirichlet-alpha-60", "neumann-alpha-20"],
)
def test_strong_coupling_finds_the_lowest_branches(bc, alpha, poles):
    report = scan_branches(bc, DeltaConfig(alpha, 1.0), poles)
    first = 1 if bc is D else 0
    assert report.skipped == ([0] if bc is D else [])
    assert report.failures == []
    assert [p.branch for p in report.poles] == list(range(first, first + poles))
    for pole in report.poles:
        assert pole.z2 > 0
        assert pole.residual <= 1e-10


def test_strong_coupling_poles_hug_the_branch_start():
    dirichlet = find_resonances(D, DeltaConfig(60.0, 1.0), 1)[0]
    assert dirichlet.z1 == pytest.approx(6.38926, abs=1e-4)
    assert dirichlet.z2 == pytest.approx(5.73e-3, rel=1e-2)
    neumann = find_resonances(N, DeltaConfig(20.0, 1.0), 1)[0]
    assert neumann.z1 == pytest.approx(3.30526, abs=1e-4)
    assert neumann.z2 == pytest.approx(0.01416, rel=1e-2)


def test_residual_is_mirror_symmetric(bc):
    rng = np.random.default_rng(20)
    alphas = rng.uniform(0.1, 10.0, 20)
    points = zip(rng.uniform(0.0, 30.0, 20), rng.uniform(0.0, 5.0, 20))
    for alpha, (z1, z2) in zip(alphas, points):
        first, second = pole_residual(bc, alpha, z1, z2)
        mirrored = pole_residual(bc, alpha, -z1, z2)
        assert mirrored == pytest.approx((first, -second), rel=1e-15, abs=0.0)


def test_poles_are_isolated(case):
    bc, cfg = case
    for pole in find_resonances(bc, cfg, 5):
        for angle in np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False):
            z1 = pole.z1 + 0.1 * math.cos(angle)
            z2 = pole.z2 + 0.1 * math.sin(angle)
            assert max(map(abs, pole_residual(bc, cfg.alpha, z1, z2))) > 1e-3


def test_balanced_residual_never_overflows(bc):
    assert pole_residual(bc, 2.0, 7.0, 1000.0) == (math.inf, math.inf)
    first, second = balanced_residual(bc, 2.0, 7.0, 1000.0)
    assert math.isfinite(first) and math.isfinite(second)


def test_balanced_residual_shares_the_zeros(case):
    bc, cfg = case
    pole = find_resonances(bc, cfg, 1)[0]
    assert max(map(abs, balanced_residual(bc, cfg.alpha, pole.z1, pole.z2))) <= 1e-10


def test_antibound_state():
    state = find_antibound(D, DeltaConfig(0.5, 1.0))
    assert state is not None
    assert 0.5 * -math.expm1(state.z2) + state.z2 == pytest.approx(0.0, abs=1e-10)
    assert state.k.imag < 0 and state.k.real == 0
    assert state.energy < 0
    assert find_antibound(D, DeltaConfig(2.0, 1.0)) is None
    assert find_antibound(N, DeltaConfig(0.5, 1.0)) is None


def test_antibound_is_reported():
    report = scan_branches(D, DeltaConfig(0.5, 1.0), 2)
    assert report.antibound is not None
    assert len(report.poles) == 2


def test_parallel_search_matches_sequential():
    cfg = DeltaConfig(2.0, 1.0)
    assert find_resonances(D, cfg, 4, workers=4) == find_resonances(D, cfg, 4)


def test_invalid_requests():
    with pytest.raises(DomainError):
        find_resonances(D, DeltaConfig(2.0, 1.0), 0)
    with pytest.raises(DomainError):
        find_resonances(N, DeltaConfig(2.0, 0.0), 3)
    with pytest.raises(DomainError):
        branch_interval(D, -1)
    with pytest.raises(DomainError):
        ResonanceSettings(seed_samples=2)

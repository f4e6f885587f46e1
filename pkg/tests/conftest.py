"""Shared fixtures for the deltawall test suite."""

import numpy as np
import pytest

from deltawall.kernels import BoundaryCondition
from deltawall.settings import Settings


@pytest.fixture(params=list(BoundaryCondition), ids=lambda bc: bc.value)
def bc(request):
    """Run a test once per wall."""
    return request.param


@pytest.fixture
def settings():
    return Settings()


@pytest.fixture
def coupling_grid():
    """The 5 × 5 (λ, x₀) grid the oracles are compared on."""
    return [
        (float(lam), float(x0))
        for lam in np.linspace(0.5, 3.0, 5)
        for x0 in np.linspace(0.2, 4.0, 5)
    ]

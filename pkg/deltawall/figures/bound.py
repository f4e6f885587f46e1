"""Bound-state energy curves and surfaces.

Curve datasets have columns (curve, param, energy, exists, asymptotic): the
fixed parameter of the curve, the swept parameter, and the sweep result.
Surface datasets have columns (lambda, x0, energy).

Functions:
    dirichlet_energy_vs_x0: E_D(x₀) for λ = 1.8, 1.85, 1.90, 1.95, 2.
    dirichlet_energy_vs_lambda: E_D(λ) for x₀ = 1/3, 1, 3, ∞.
    neumann_energy_vs_x0: E_N(x₀) for λ = 0.9, 0.95, 1, 1.05, 1.1.
    neumann_energy_vs_lambda: E_N(λ) for x₀ = 0.1, 1, 3, ∞.
    dirichlet_surface: E_D(λ, x₀) on a grid.
    neumann_surface: E_N(λ, x₀) on a grid.
"""

from typing import Sequence
import math

import numpy as np

from ..emit import Dataset
from ..fanout import fan_out
from ..kernels import BoundaryCondition
from ..spectral import energy_sweep
from .request import FigureRequest

__all__ = (
    "dirichlet_energy_vs_lambda",
    "dirichlet_energy_vs_x0",
    "dirichlet_surface",
    "neumann_energy_vs_lambda",
    "neumann_energy_vs_x0",
    "neumann_surface",
)

CURVE_COLUMNS = ("curve", "param", "energy", "exists", "asymptotic")
SURFACE_COLUMNS = ("lambda", "x0", "energy")

DIRICHLET_LAMBDAS = (1.8, 1.85, 1.90, 1.95, 2.0)
DIRICHLET_X0S = (1.0 / 3.0, 1.0, 3.0, math.inf)
NEUMANN_LAMBDAS = (0.9, 0.95, 1.0, 1.05, 1.1)
NEUMANN_X0S = (0.1, 1.0, 3.0, math.inf)


def _open_axis(request: FigureRequest, upper: float) -> list:
    """count points in (0, upper], excluding the origin."""
    return [float(v) for v in np.linspace(upper / request.count, upper, request.count)]


def _curves(
    bc: BoundaryCondition,
    fixed: str,
    curves: Sequence[float],
    grid_of,
    request: FigureRequest,
) -> Dataset:
    dataset = Dataset(
        CURVE_COLUMNS,
        metadata={"bc": bc.value, "fixed": fixed, "curves": list(curves)},
    )
    for curve in curves:
        points = energy_sweep(
            bc,
            fixed,
            curve,
            grid_of(curve),
            settings=request.roots,
            workers=request.workers,
        )
        for point in points:
            dataset.append(
                curve, point.parameter, point.energy, point.exists, point.asymptotic
            )
    return dataset


def dirichlet_energy_vs_x0(request: FigureRequest) -> Dataset:
    """E_D(x₀) on [1/λ, x0_max]; every curve starts at the threshold E = 0."""
    return _curves(
        BoundaryCondition.DIRICHLET,
        "lambda",
        DIRICHLET_LAMBDAS,
        lambda lam: np.linspace(1.0 / lam, request.x0_max, request.count),
        request,
    )


def dirichlet_energy_vs_lambda(request: FigureRequest) -> Dataset:
    return _curves(
        BoundaryCondition.DIRICHLET,
        "x0",
        DIRICHLET_X0S,
        lambda _: _open_axis(request, request.lambda_max),
        request,
    )


def neumann_energy_vs_x0(request: FigureRequest) -> Dataset:
    """E_N(x₀) on [0, x0_max], starting from E_N(0) = -λ²."""
    return _curves(
        BoundaryCondition.NEUMANN,
        "lambda",
        NEUMANN_LAMBDAS,
        lambda _: np.linspace(0.0, request.x0_max, request.count),
        request,
    )


def neumann_energy_vs_lambda(request: FigureRequest) -> Dataset:
    return _curves(
        BoundaryCondition.NEUMANN,
        "x0",
        NEUMANN_X0S,
        lambda _: _open_axis(request, request.lambda_max),
        request,
    )


def _surface(bc: BoundaryCondition, request: FigureRequest) -> Dataset:
    lambdas = _open_axis(request, request.surface_lambda_max)
    x0s = _open_axis(request, request.x0_max)

    def row(lam: float):
        return energy_sweep(bc, "lambda", lam, x0s, settings=request.roots)

    dataset = Dataset(SURFACE_COLUMNS, metadata={"bc": bc.value})
    for lam, points in zip(lambdas, fan_out(row, lambdas, request.workers)):
        for point in points:
            dataset.append(lam, point.parameter, point.energy if point.exists else None)
    return dataset


def dirichlet_surface(request: FigureRequest) -> Dataset:
    """E_D(λ, x₀); cells at or below threshold have an empty energy."""
    return _surface(BoundaryCondition.DIRICHLET, request)


def neumann_surface(request: FigureRequest) -> Dataset:
    return _surface(BoundaryCondition.NEUMANN, request)

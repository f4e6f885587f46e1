"""Resonance pole loci in the momentum plane.

Rows have columns (alpha, branch, z1, z2, re_k, im_k) with k measured in
units of 1/x₀ (x₀ = 1, λ = α).

Functions:
    dirichlet_poles: Dirichlet pole loci for each requested α.
    neumann_poles: Neumann pole loci for each requested α.
"""

import logging

from ..emit import Dataset
from ..errors import ConvergenceError
from ..kernels import BoundaryCondition, DeltaConfig
from ..resonances import scan_branches
from .request import FigureRequest

__all__ = (
    "dirichlet_poles",
    "neumann_poles",
)

POLE_COLUMNS = ("alpha", "branch", "z1", "z2", "re_k", "im_k")


def _loci(bc: BoundaryCondition, request: FigureRequest) -> Dataset:
    dataset = Dataset(
        POLE_COLUMNS,
        metadata={
            "bc": bc.value,
            "alphas": list(request.alphas),
            "n_max": request.n_max,
        },
    )
    failures = []
    for alpha in request.alphas:
        report = scan_branches(
            bc,
            DeltaConfig(alpha, 1.0),
            request.n_max,
            settings=request.resonances,
            workers=request.workers,
        )
        failures.extend(report.failures)
        for pole in report.poles:
            k = pole.k
            dataset.append(alpha, pole.branch, pole.z1, pole.z2, k.real, k.imag)
    if failures:
        branches = ", ".join(str(e.branch) for e in failures)
        logging.error("%d branches failed to converge: %s", len(failures), branches)
        raise ConvergenceError(
            f"pole search failed on branches {branches}", residual=failures[0].residual
        )
    return dataset


def dirichlet_poles(request: FigureRequest) -> Dataset:
    return _loci(BoundaryCondition.DIRICHLET, request)


def neumann_poles(request: FigureRequest) -> Dataset:
    return _loci(BoundaryCondition.NEUMANN, request)

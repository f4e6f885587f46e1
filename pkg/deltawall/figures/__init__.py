"""Registry of figure datasets.

Built-in generators are merged with any installed through entry points in
the `deltawall.figures` group. A generator takes a FigureRequest and returns
a Dataset.

Classes:
    FigureRequest: Grid and solver options shared by every generator.

Functions:
    installed_figures: Mapping of figure names to generators.
    generate: Build the dataset of one figure.
"""

from typing import (
    Callable,
    Dict,
)
import logging
import sys

if sys.version_info < (3, 10):
    from importlib_metadata import entry_points
else:
    from importlib.metadata import entry_points

from ..emit import Dataset
from ..errors import DomainError
from . import (
    bound,
    poles,
)
from .request import FigureRequest

__all__ = (
    "FigureRequest",
    "bound",
    "generate",
    "installed_figures",
    "poles",
)

Generator = Callable[[FigureRequest], Dataset]

BUILTIN_FIGURES: Dict[str, Generator] = {
    "1L": bound.dirichlet_energy_vs_x0,
    "1R": bound.dirichlet_energy_vs_lambda,
    "2": bound.dirichlet_surface,
    "2N": bound.neumann_surface,
    "3": poles.dirichlet_poles,
    "4L": bound.neumann_energy_vs_x0,
    "4R": bound.neumann_energy_vs_lambda,
    "5": poles.neumann_poles,
}


def installed_figures() -> Dict[str, Generator]:
    """Return the built-in generators plus those registered as entry points.

    An entry point that fails to load is logged and skipped; it never
    replaces a built-in figure.
    """
    figures = dict(BUILTIN_FIGURES)
    for plugin in entry_points(group=__name__):
        if plugin.name in figures:
            continue
        try:
            logging.debug('Loading figure plug-in "%s"', plugin.name)
            figures[plugin.name] = plugin.load()
        except Exception:
            logging.exception(
                'An error occurred while attempting to load figure "%s"', plugin.name
            )
    return figures


def generate(name: str, request: FigureRequest) -> Dataset:
    """Build the dataset of the named figure.

    Raises:
        DomainError: No figure has that name.
    """
    figures = installed_figures()
    key = name.upper() if name.upper() in figures else name
    if key not in figures:
        raise DomainError(
            f"Unknown figure {name!r}; choose from {', '.join(sorted(figures))}"
        )
    logging.info("Generating figure %s", key)
    dataset = figures[key](request)
    dataset.metadata.setdefault("figure", key)
    return dataset

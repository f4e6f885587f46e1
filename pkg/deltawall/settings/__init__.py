"""Utilities for managing the solver configuration.

Classes:
    Settings: An object that parses an optional YAML configuration file and
        attaches one settings dataclass per numerical concern to itself.
"""

from typing import Optional
import dataclasses
import logging
import pathlib

import yaml

from ..errors import DomainError
from .output import OutputSettings
from .quadrature import QuadratureSettings, ShootingConfig
from .solver import KernelSettings, ResonanceSettings, RootSettings

__all__ = (
    "KernelSettings",
    "OutputSettings",
    "QuadratureSettings",
    "ResonanceSettings",
    "RootSettings",
    "Settings",
    "ShootingConfig",
)


class Settings:
    """A class for parsing and storing configuration options for the solvers."""

    SECTIONS = {
        "roots": RootSettings,
        "kernels": KernelSettings,
        "resonances": ResonanceSettings,
        "quadrature": QuadratureSettings,
        "shooting": ShootingConfig,
        "output": OutputSettings,
    }

    def __init__(self, config: Optional[pathlib.Path] = None):
        """Parse a YAML configuration file to configure the solvers.

        Each top-level key of the file names a section; its mapping is passed
        to the `from_dict` constructor of that section's dataclass. Missing
        sections take their defaults.

        Args:
            config: An optional Path to a configuration file. If None, every
                section uses its defaults.

        Raises:
            DomainError: The file does not exist, is not a mapping, or holds
                values the sections reject.
        """
        data = {}
        if config is not None:
            if not config.is_file():
                raise DomainError(f"No such configuration file: {config}")
            with open(config.resolve()) as config_file:
                data = yaml.safe_load(config_file) or {}
            if not isinstance(data, dict):
                raise DomainError(f"{config} does not contain a mapping")
            logging.debug("Read settings from %s", config)
        for name in data.keys() - self.SECTIONS.keys():
            logging.warning('Ignoring unknown settings section "%s"', name)
        self.roots: RootSettings
        self.kernels: KernelSettings
        self.resonances: ResonanceSettings
        self.quadrature: QuadratureSettings
        self.shooting: ShootingConfig
        self.output: OutputSettings
        for name, section in self.SECTIONS.items():
            try:
                setattr(self, name, section.from_dict(data.get(name) or {}))
            except (TypeError, ValueError) as e:
                raise DomainError(f'Invalid "{name}" settings: {e}') from e

    def override(self, *, tol: Optional[float] = None, workers: Optional[int] = None):
        """Apply command-line overrides in place.

        Args:
            tol: Replaces the pole acceptance tolerance and the absolute root
                tolerance.
            workers: Replaces the number of fan-out threads.

        Returns: This Settings object.
        """
        try:
            if tol is not None:
                self.resonances = dataclasses.replace(self.resonances, accept_tol=tol)
                self.roots = dataclasses.replace(self.roots, xtol=tol)
            if workers is not None:
                self.output = dataclasses.replace(self.output, workers=workers)
        except ValueError as e:
            raise DomainError(str(e)) from e
        return self

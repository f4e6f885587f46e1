"""Settings for dataset emission.

Classes:
    OutputSettings: Format and fan-out options of the command-line tool.
"""

from ..dataclass import dataclass
from ..errors import DomainError

__all__ = ("OutputSettings",)

FORMATS = ("csv", "json")


@dataclass(frozen=True)
class OutputSettings:
    """Settings for dataset emission.

    Settings:
        format: Default dataset format, "csv" or "json".
        workers: Number of threads used to evaluate grid points. One means
            sequential evaluation.
        grid: Default number of points per axis for figure grids.
    """

    format: str = "csv"
    workers: int = 1
    grid: int = 60

    def __post_init__(self) -> None:
        if self.format not in FORMATS:
            raise DomainError(f"format must be one of {', '.join(FORMATS)}")
        if self.workers < 1:
            raise DomainError("workers must be at least 1")
        if self.grid < 2:
            raise DomainError("grid must have at least 2 points")

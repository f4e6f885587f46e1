"""Deterministic CSV and JSON emission of tabular datasets.

Classes:
    Dataset: Named columns, rows and a metadata mapping.

Functions:
    package_version: The installed version of deltawall.
    write_dataset: Serialize a dataset to a text stream.
"""

from typing import (
    Any,
    Dict,
    List,
    Sequence,
    TextIO,
)
import csv
import dataclasses
import json
import math
import sys

if sys.version_info < (3, 10):
    import importlib_metadata as metadata
else:
    from importlib import metadata

__all__ = (
    "Dataset",
    "package_version",
    "write_dataset",
)


@dataclasses.dataclass
class Dataset:
    """A table with a fixed column schema.

    Attributes:
        columns: Column names, in output order.
        rows: Row tuples with one value per column.
        metadata: Version and configuration echo for the JSON header. It never
            holds timestamps, so equal configurations give equal bytes.
    """

    columns: Sequence[str]
    rows: List[Sequence[Any]] = dataclasses.field(default_factory=list)
    metadata: Dict[str, Any] = dataclasses.field(default_factory=dict)

    def append(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(
                f"row has {len(values)} values for {len(self.columns)} columns"
            )
        self.rows.append(values)


def package_version() -> str:
    """Return the installed version, or "unknown" when running from source."""
    try:
        return metadata.version("deltawall")
    except metadata.PackageNotFoundError:
        return "unknown"


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, dict):
        return {key: _json_value(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(item) for item in value]
    return value


def write_dataset(dataset: Dataset, stream: TextIO, fmt: str = "csv") -> None:
    """Write a dataset as CSV (header row, then rows) or as a JSON document.

    Floats are written with repr so every value round-trips exactly. The JSON
    document has a "metadata" object and a "rows" list of column mappings;
    non-finite floats are written as the strings "inf", "-inf" and "nan".
    """
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(dataset.columns)
        for row in dataset.rows:
            writer.writerow([_csv_cell(value) for value in row])
    elif fmt == "json":
        document = {
            "metadata": _json_value(dataset.metadata),
            "columns": list(dataset.columns),
            "rows": [
                dict(zip(dataset.columns, map(_json_value, row)))
                for row in dataset.rows
            ],
        }
        json.dump(document, stream, indent=2)
        stream.write("\n")
    else:
        raise ValueError(f"Unknown format {fmt!r}")

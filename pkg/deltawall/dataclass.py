"""Utilities for managing dataclasses.

Decorators:
    dataclass: Converts a decorated class into a dataclass and adds a
        `from_dict` method that passes only the keys that match the dataclass
        attributes to the constructor, coercing scalar strings read from YAML
        to the declared field types.
"""
from typing import (
    Any,
    Dict,
    Union,
    get_args,
    get_origin,
    get_type_hints,
)
import dataclasses
import logging
import math

__all__ = ("dataclass",)


def _coerce(value: Any, hint: Any) -> Any:
    """Convert a YAML scalar to the type named by a field annotation.

    Only float, int and bool (optionally wrapped in Optional) are converted;
    anything else is returned untouched.
    """
    if get_origin(hint) is Union:
        options = [arg for arg in get_args(hint) if arg is not type(None)]
        if value is None or len(options) != 1:
            return value
        hint = options[0]
    if hint is bool and isinstance(value, str):
        return value.strip().lower() in ("1", "true", "yes", "on")
    if hint is float and isinstance(value, (str, int)) and not isinstance(value, bool):
        number = float(value)
        if math.isnan(number):
            raise ValueError(f"{value!r} is not a number")
        return number
    if hint is int and isinstance(value, str):
        return int(value)
    return value


@classmethod
def from_dict(cls, source: Dict[str, Any]):
    """A method to be attached to a dataclass that instantiates from a dict.

    Args:
        source: A dictionary containing keys and values that will be used to
            initialize the dataclass. Hyphens in keys are first converted into
            underscores. Keys that are not attributes of the dataclass are
            logged and ignored.

    Returns: An instance of the dataclass.
    """
    hints = get_type_hints(cls)
    values = {}
    for key, value in source.items():
        attr = key.replace("-", "_")
        if attr not in cls.__dataclass_fields__:
            logging.warning('Ignoring unknown %s setting "%s"', cls.__name__, key)
            continue
        values[attr] = _coerce(value, hints.get(attr))
    return cls(**values)


def dataclass(cls=None, **kwargs):
    """Converts a class into a dataclass and adds the `from_dict` method.

    Keyword arguments such as `frozen=True` are passed on to
    `dataclasses.dataclass`.
    """

    def wrap(inner_cls):
        inner = dataclasses.dataclass(inner_cls, **kwargs)
        if not hasattr(inner, "from_dict"):
            inner.from_dict = from_dict
        return inner

    return wrap if cls is None else wrap(cls)

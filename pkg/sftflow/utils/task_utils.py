"""Module for task utilities: environment configuration and report helpers."""

import json
import os
from enum import Enum
from typing import Optional

from sftflow.entities.constants import (
    DEFAULT_SEARCH_LIMIT,
    K_CLASS_VARIANT_ENV,
    SEARCH_LIMIT_ENV,
    WORKER_ENV,
)
from sftflow.entities.enums import KClassVariant
from sftflow.entities.exceptions import ArgumentError


def load_into_env_vars(options: dict) -> None:
    """Loads a given dict with options into environmental variables.

    Args:
        options: dict with options to load
    """
    for key, value in options.items():
        if type(value) in [str, int, float, bool]:
            os.environ[key] = str(value)


def dataclass_convertor(data):
    """Converts attributes."""
    if isinstance(data, Enum):
        return data.value
    return data


def _int_setting(name: str, default: int) -> int:
    value = os.environ.get(name, str(default))
    try:
        number = int(value)
    except ValueError as e:
        raise ArgumentError(f"{name} must be an integer, got {value!r}") from e
    if number < 1:
        raise ArgumentError(f"{name} must be positive, got {number}")
    return number


def get_worker_count() -> int:
    """Worker count for the parallel witness search.

    Raises:
        ArgumentError: If SFTFLOW_WORKER is not a positive integer.
    """
    return _int_setting(WORKER_ENV, 1)


def get_search_limit() -> int:
    """Largest candidate count the witness search accepts."""
    return _int_setting(SEARCH_LIMIT_ENV, DEFAULT_SEARCH_LIMIT)


def get_k_class_variant(override: Optional[KClassVariant] = None) -> KClassVariant:
    """Weights for the suspension K-class, an explicit override wins."""
    if override is not None:
        return override
    value = os.environ.get(K_CLASS_VARIANT_ENV, KClassVariant.DISPLAYED.value)
    try:
        return KClassVariant(value.lower())
    except ValueError as e:
        raise ArgumentError(
            f"{K_CLASS_VARIANT_ENV} must be one of "
            f"{[member.value for member in KClassVariant]}, got {value!r}"
        ) from e


def render_report(report: dict, as_json: bool) -> str:
    """Renders a flat report as `key: value` lines or one JSON object."""
    if as_json:
        return json.dumps(report, sort_keys=True, default=dataclass_convertor)
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {k}: {v}" for k, v in value.items())
        elif isinstance(value, list):
            lines.append(f"{key}:")
            lines.extend(f"  - {item}" for item in value)
        else:
            lines.append(f"{key}: {dataclass_convertor(value)}")
    return "\n".join(lines)

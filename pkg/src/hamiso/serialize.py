"""Conversion of report values to plain JSON types."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .exactmath import Surd

__all__ = ["jsonable"]


def jsonable(value: Any) -> Any:
    """Convert a value into plain JSON types (Fractions become "p/q" strings)."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Surd):
        return {"coeff": str(value.coeff), "radicand": str(value.radicand), "value": float(value)}
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return jsonable(value.to_dict())
    try:
        return float(value)  # mpmath numbers
    except (TypeError, ValueError):
        return str(value)

"""Exact computations on the ten-dimensional spinor variety and its linear sections."""

from __future__ import annotations

from .field import GF, QQ, Field, parse_field
from .results import PositiveDimensional

__version__ = "0.1.0"

__all__ = ["Field", "GF", "QQ", "parse_field", "PositiveDimensional", "__version__"]

"""Exceptional groups E6, F4 and 2E6 over finite fields, built from split octonions."""

from __future__ import annotations

__version__ = "0.1.0"

from .albert import AlbertVector, Color, alb_det, classify_color, is_white
from .gf import FieldElement, FieldSpec, field_make, field_of_order, quadratic_extension
from .group import LinearOp27, generator_set, preserves_det
from .octonion import Octonion
from .poly import CubicPoly27

__all__ = [
    "AlbertVector",
    "Color",
    "CubicPoly27",
    "FieldElement",
    "FieldSpec",
    "LinearOp27",
    "Octonion",
    "alb_det",
    "classify_color",
    "field_make",
    "field_of_order",
    "generator_set",
    "is_white",
    "preserves_det",
    "quadratic_extension",
    "__version__",
]

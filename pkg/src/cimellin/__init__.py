"""Cayley matrices, Mellin transforms and mirror checks for complete intersections."""

from __future__ import annotations

from .cayley import AuxPlacement, CayleyMatrix, LaurentSystem, build_phase, cayley_matrix
from .errors import CimellinError
from .mellin import gamma_product, linear_forms

__all__ = [
    "AuxPlacement",
    "CayleyMatrix",
    "CimellinError",
    "LaurentSystem",
    "build_phase",
    "cayley_matrix",
    "gamma_product",
    "linear_forms",
]
__version__ = "0.1.0"

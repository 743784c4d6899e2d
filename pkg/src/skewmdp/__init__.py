"""Skew-polynomial unit-memory MDP convolutional codes over F_{q^t}."""

from ._backend import HAVE_COMPILED, default_backend
from .construction import ConvCode, construct_code
from .conv_core import PolyMatrix, column_distance_exact, is_mdp, mdp_minor_check, truncate
from .gf_tower import ExtensionField, FieldElement, make_extension
from .skew_poly import SkewPolynomial

__all__ = [
    "HAVE_COMPILED",
    "ConvCode",
    "ExtensionField",
    "FieldElement",
    "PolyMatrix",
    "SkewPolynomial",
    "column_distance_exact",
    "construct_code",
    "default_backend",
    "is_mdp",
    "make_extension",
    "mdp_minor_check",
    "truncate",
]

__version__ = "0.1.0"

"""Exact computations for parabolics, Weyl strata and Hecke transforms of loop groups."""

from ._backend import BACKEND
from .affine import Crossing, classify_parabolic, graded_component
from .errors import LoopflagError, ResourceLimitError
from .rootsys import build_root_system, strange_identity

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Crossing",
    "LoopflagError",
    "ResourceLimitError",
    "build_root_system",
    "classify_parabolic",
    "graded_component",
    "strange_identity",
    "__version__",
]

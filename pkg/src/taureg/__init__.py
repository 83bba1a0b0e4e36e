"""Exact computations with tau-regular modules over finite-dimensional quiver algebras."""

from .algebra import (
    Algebra,
    AlgebraPresentation,
    Arrow,
    Quiver,
    Relation,
    build_algebra,
    opposite,
    quotient_by_idempotent,
)
from .linalg import DEFAULT_PRIME, Matrix
from .rep import Morphism, ProjMap, Representation

__version__ = "0.1.0"

"""hopfsplit: exact-arithmetic computations with finite-dimensional
algebras, coalgebras and Hopf algebras presented by structure constants."""

from .fields import GF, QQ, ScalarField
from .linalg import InconsistentSystem, Matrix, Subspace, solve_linear, subspace_ops

__all__ = [
    "GF",
    "QQ",
    "ScalarField",
    "Matrix",
    "Subspace",
    "InconsistentSystem",
    "solve_linear",
    "subspace_ops",
]

__version__ = "0.1.0"

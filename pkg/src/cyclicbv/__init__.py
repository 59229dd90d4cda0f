"""Exact-arithmetic Hochschild / negative cyclic (co)homology toolkit.

Everything is computed over an exact field (rationals or Gaussian
rationals): graded algebras with trace, their normalized Hochschild
chain/cochain complexes, Connes' B, negative cyclic complexes, the BV
structure and string-type bracket, Maurer-Cartan moduli with the trace
symplectic form, and the evaluation map pairing negative cyclic classes
against Maurer-Cartan points.
"""

from .scalars import QQ, QQi, Scalar
from .models import (
    GradedAlgebraModel,
    AInfinityModel,
    PairingForm,
    load_model,
    loads_model,
    validate_dga,
    validate_a_infinity,
    pairing,
)
from .linalg import kernel_backend

__all__ = [
    "QQ",
    "QQi",
    "Scalar",
    "GradedAlgebraModel",
    "AInfinityModel",
    "PairingForm",
    "load_model",
    "loads_model",
    "validate_dga",
    "validate_a_infinity",
    "pairing",
    "kernel_backend",
]

__version__ = "0.1.0"

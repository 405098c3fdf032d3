"""Exact verification toolkit for cells, cones and two-layer representations of multitables."""
from __future__ import annotations

from .errors import TwoCatError
from .scalars import QQ, FieldSpec, Scalar, sqrt_field
from .multitable import Gen, MultiTable, validate
from .cells import cell_structure
from .cone import (
    ConeElement, GoodnessWitness, cell_algebra, cell_algebra_of, search_goodness, verify_goodness,
)
from .tworep import RepMatrices, apex, diagram, principal_rep, ses_split

__all__ = [
    "TwoCatError", "QQ", "FieldSpec", "Scalar", "sqrt_field", "Gen", "MultiTable", "validate",
    "cell_structure", "ConeElement", "GoodnessWitness", "cell_algebra", "cell_algebra_of",
    "search_goodness", "verify_goodness", "RepMatrices", "apex", "diagram", "principal_rep", "ses_split",
]
__version__ = "0.1.0"

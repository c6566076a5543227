"""Exact ADO invariants at roots of unity, colored Jones polynomials and q-recursions."""

from .cyclo import CycNum
from .jones import colored_jones, renormalized_jones
from .poly import LaurentPoly, QFrac, QPoly
from .qweyl import WeylElement
from .statesum import ado_invariant
from .tangle import builtin, parse

__version__ = "0.1.0"

__all__ = [
    "CycNum", "LaurentPoly", "QFrac", "QPoly", "WeylElement",
    "ado_invariant", "builtin", "colored_jones", "parse", "renormalized_jones",
]

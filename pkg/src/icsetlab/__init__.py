"""icsetlab: exact information-convex-set enumeration on stabilizer lattices."""

__version__ = "0.1.0"

from .values import EntropyValue
from .pauli import Pauli
from .lattice import (
    CellComplex,
    LatticeCurve,
    Region,
    build_lattice,
    elementary_deform,
    figure8_curve,
    make_annulus,
    rectangle_curve,
    turning_number,
)
from .elements import StabilizerElement
from .stabilizer import (
    StabilizerContext,
    insert_dislocation_pair,
    toric_code,
    verify_axioms,
)

__all__ = [
    "CellComplex",
    "EntropyValue",
    "LatticeCurve",
    "Pauli",
    "Region",
    "StabilizerContext",
    "StabilizerElement",
    "build_lattice",
    "elementary_deform",
    "figure8_curve",
    "insert_dislocation_pair",
    "make_annulus",
    "rectangle_curve",
    "toric_code",
    "turning_number",
    "verify_axioms",
]

"""Exact computations for nilpotent triple-zero vector fields in three variables."""

from .bases import Expansion, GenIndex, decompose, decompose_b, make_generator, membership_b
from .errors import InconsistencyError, ParseError, PreconditionError, TrizeroError
from .liealg import bracket_in_basis, structure_constants_closed
from .normalform import hamiltonian_reduce, normalize, rescale_leading
from .parsing import parse_field, parse_poly
from .poisson import poisson_bracket, psi, psi_inverse, secondary_potential
from .ratpoly import DELTA, Poly, X, Y, Z
from .vfield import VField

__all__ = [
    "DELTA", "Expansion", "GenIndex", "InconsistencyError", "ParseError", "Poly",
    "PreconditionError", "TrizeroError", "VField", "X", "Y", "Z", "bracket_in_basis",
    "decompose", "decompose_b", "hamiltonian_reduce", "make_generator", "membership_b",
    "normalize", "parse_field", "parse_poly", "poisson_bracket", "psi", "psi_inverse",
    "rescale_leading", "secondary_potential", "structure_constants_closed",
]

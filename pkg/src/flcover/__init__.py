"""Finite cover systems and modal FL-algebras: checkers, constructions and a formula evaluator."""

from .algebra import FLAlgebra, check_modal_fl, check_residuated_lattice, check_storage
from .cover import CoverSystem, Extensional, LatticeJoin, j, prop_algebra
from .order import FiniteLattice, FinitePreorder
from .representation import canonical_cover_system, verify_representation

__all__ = [
    "CoverSystem", "Extensional", "FLAlgebra", "FiniteLattice", "FinitePreorder", "LatticeJoin",
    "canonical_cover_system", "check_modal_fl", "check_residuated_lattice", "check_storage",
    "j", "prop_algebra", "verify_representation",
]

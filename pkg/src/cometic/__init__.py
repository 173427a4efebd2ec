"""Finite lattices whose principal congruences realize a given quasiorder, and functorial lifts."""
from .category import SmallConcreteCategory, cometic_functor, is_monomorphism, verify_theorem_thmcat
from .congruence import (CongruenceEngine, con_lattice, is_simple, princ_map, princ_poset,
                         principal_congruence, quotient_lattice)
from .gadgets import Gadget, build_gadget, glue, verify_gadget
from .lift import PosetFunctor, hom_lift, lift_functor, verify_lifting
from .nlattice import ColorUniverse, build_big, build_LHnu, check_big
from .order import Lattice, Poset, QuasiOrder, lattice_from_poset, quasiorder_closure
from .quasicolor import QuasiColoredLattice, validate_quasicoloring
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "ColorUniverse", "CongruenceEngine", "Gadget", "Lattice", "Poset", "PosetFunctor", "QuasiColoredLattice",
    "QuasiOrder", "Report", "SmallConcreteCategory", "build_LHnu", "build_big", "build_gadget", "check_big",
    "cometic_functor", "con_lattice", "glue", "hom_lift", "is_monomorphism", "is_simple", "lattice_from_poset",
    "lift_functor", "princ_map", "princ_poset", "principal_congruence", "quasiorder_closure", "quotient_lattice",
    "validate_quasicoloring", "verify_gadget", "verify_lifting", "verify_theorem_thmcat",
]

"""Exact computations with the Steinberg lattice of GL_n(q) and its
l-modular filtration."""
from .filtration import Filtration, FiltrationReport, filtration, get_filtration
from .group import GLn, Root, build_parabolic_table, parabolic_index, simple_root
from .identities import (IdentityCase, verify_all, verify_c7, verify_ex1, verify_ex2,
                         verify_group_identity, verify_lattice_identity, verify_theorems)
from .lattice import SteinbergLattice, UCharacter, all_characters, lattice
from .modrep import casa_check, explore_socle, gow_conjecture, mod_rep, module_suite
from .rep import UNKNOWN, composition_series, is_irreducible, self_dual_check, spin
from .rings import GF, CycInt, KField, make_K
from .snf import snf

__version__ = "0.1.0"

__all__ = [
    "Filtration", "FiltrationReport", "filtration", "get_filtration",
    "GLn", "Root", "build_parabolic_table", "parabolic_index", "simple_root",
    "IdentityCase", "verify_all", "verify_c7", "verify_ex1", "verify_ex2",
    "verify_group_identity", "verify_lattice_identity", "verify_theorems",
    "SteinbergLattice", "UCharacter", "all_characters", "lattice",
    "casa_check", "explore_socle", "gow_conjecture", "mod_rep", "module_suite",
    "UNKNOWN", "composition_series", "is_irreducible", "self_dual_check", "spin",
    "GF", "CycInt", "KField", "make_K", "snf",
]

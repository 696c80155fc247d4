"""Exact-arithmetic checks for modular Chevalley Lie algebras, Moore determinants and derivation modules."""

from .chevalley import build_chevalley, reduce_mod_p
from .fppoly import FpPoly, PolyMatrix
from .rootsystem import build_root_system, direct_sum, parse_type

__version__ = "0.1.0"

__all__ = ["FpPoly", "PolyMatrix", "build_chevalley", "build_root_system", "direct_sum", "parse_type", "reduce_mod_p"]

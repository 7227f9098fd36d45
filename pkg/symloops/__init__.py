"""
symloops
Symbol loops in SL_n over k[T], Steinberg words, the simplicial resolution
and brute-force K_2 / Schur-multiplier oracles, all in exact arithmetic.
"""

from .arith import FiniteField, Poly, PolynomialRing, RationalField, parse_ring, poly_divmod, poly_eval
from .chevalley import GroupMatrix, RootA, elem, eval_matrix, h_elem, identity, w_elem
from .errors import InputFormatError, SymloopsError
from .factorization import factor_elementary, path_to_steinberg, word_to_path
from .loops import PathMatrix, c_loop, h_loop, sl2_closed_form, verify_path_identity, w_loop, x_loop
from .oracles import (
    AbelianGroupPresentation,
    milnor_k2_finite_field,
    schur_multiplier,
    tame_symbol,
)
from .simplicial import (
    SimplexMatrix,
    SimplexPoly,
    degeneracy,
    face,
    moore_is_loop,
    verify_homotopy_witness,
)
from .snf import SparseIntMatrix, smith_normal_form
from .steinberg import SteinbergWord, in_k2, project, st_inv, st_mul, symbol_word, tame_invariants

__version__ = "1.0.0"

__all__ = [
    "AbelianGroupPresentation",
    "FiniteField",
    "GroupMatrix",
    "InputFormatError",
    "PathMatrix",
    "Poly",
    "PolynomialRing",
    "RationalField",
    "RootA",
    "SimplexMatrix",
    "SimplexPoly",
    "SparseIntMatrix",
    "SteinbergWord",
    "SymloopsError",
    "c_loop",
    "degeneracy",
    "elem",
    "eval_matrix",
    "face",
    "factor_elementary",
    "h_elem",
    "h_loop",
    "identity",
    "in_k2",
    "milnor_k2_finite_field",
    "moore_is_loop",
    "parse_ring",
    "path_to_steinberg",
    "poly_divmod",
    "poly_eval",
    "project",
    "schur_multiplier",
    "sl2_closed_form",
    "smith_normal_form",
    "st_inv",
    "st_mul",
    "symbol_word",
    "tame_invariants",
    "tame_symbol",
    "verify_homotopy_witness",
    "verify_path_identity",
    "w_elem",
    "w_loop",
    "word_to_path",
    "x_loop",
]

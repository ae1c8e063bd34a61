"""U^{-,0} for type A_{n-1}: canonical elements and the operators acting on them."""

from .elements import (
    UElem,
    matrix_from,
    matrix_entries,
    matrix_weight,
    root_depth,
    total_height,
    weight_components,
    weight_of,
)
from .operators import (
    ev,
    eta_divided,
    eta_root,
    eta_simple,
    h1_times,
    r_raise,
    theta,
)
from .commutators import (
    all_interleavings,
    bracket_word_apply,
    bracket_xi,
    infer_pair,
    satisfies_interleaving,
    xi,
)
from ..fields import binom_int

__all__ = [
    "UElem",
    "binom_int",
    "matrix_from",
    "matrix_entries",
    "matrix_weight",
    "root_depth",
    "total_height",
    "weight_components",
    "weight_of",
    "ev",
    "eta_divided",
    "eta_root",
    "eta_simple",
    "h1_times",
    "r_raise",
    "theta",
    "all_interleavings",
    "bracket_word_apply",
    "bracket_xi",
    "infer_pair",
    "satisfies_interleaving",
    "xi",
]

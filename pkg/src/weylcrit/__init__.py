"""Deciding F e+ != 0 in Weyl modules of type A over Q and F_p."""

from .criterion import (
    Descend,
    Raise,
    Witness,
    check_irreducible_any,
    check_irreducible_nonzero,
    check_nonzero,
    cross_validate,
    replay,
    simply_reduce,
    verify_witness,
)
from .exprs import ParseError, format_elem, parse_expr
from .fields import GF, QQ, FieldCtx
from .flows import Flow, enumerate_family, sign_i
from .hyperalgebra import UElem, eta_divided, eta_root, eta_simple, ev, r_raise, xi
from .oracle import WeylContext, weyl_context

__version__ = "0.1.0"

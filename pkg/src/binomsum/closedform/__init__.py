"""Closed forms: expression trees, special functions, identity families and moments."""

from .expr import Expr, certified_sign, eval_expr, parse_expr
from .families import FAMILIES, Identity, family_instantiate
from .moments import MOMENT_FAMILIES, moment_exprs, moments
from .special import R_func, q_func

__all__ = [
    "Expr",
    "FAMILIES",
    "Identity",
    "MOMENT_FAMILIES",
    "R_func",
    "certified_sign",
    "eval_expr",
    "family_instantiate",
    "moment_exprs",
    "moments",
    "parse_expr",
    "q_func",
]

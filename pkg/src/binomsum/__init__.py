"""Arbitrary-precision evaluation and verification of binomial series.

Series of the shape sum_k p(k) x^k / (k^e (2k-1)^f C(mk, nk)) are summed by
binary splitting with a certified tail bound, closed forms are evaluated with
an independent elementary-function kernel, and a catalog ties the two together.
"""

from .catalog import VerifyReport, VerifySummary, load_catalog, verify_all, verify_identity
from .closedform import eval_expr, family_instantiate, moments, parse_expr
from .errors import BinomSumError
from .inversion import invert_c3, invert_c42
from .numkernel import FixedReal, const_pi, elem_eval
from .oracle import QuadParams, quad_series
from .series import TermSpec, sum_binsplit, sum_digits, sum_naive, tail_bound

__version__ = "0.1.0"

__all__ = [
    "BinomSumError",
    "FixedReal",
    "QuadParams",
    "TermSpec",
    "VerifyReport",
    "VerifySummary",
    "const_pi",
    "elem_eval",
    "eval_expr",
    "family_instantiate",
    "invert_c3",
    "invert_c42",
    "load_catalog",
    "moments",
    "parse_expr",
    "quad_series",
    "sum_binsplit",
    "sum_digits",
    "sum_naive",
    "tail_bound",
    "verify_all",
    "verify_identity",
]

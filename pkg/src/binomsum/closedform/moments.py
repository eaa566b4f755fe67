"""Moments S_r = sum_{k>=1} k^r x0^k / C(mk, nk), r in {-1, 0, 1}, in closed form.

Each family pairs two closed-form identities that share the series argument.
Their numerators (alpha k + beta) give a 2x2 linear system for (S_1, S_0),
and a telescoping identity then yields S_{-1}.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError, IllConditioned, PrecisionExhausted
from ..inversion import C3_BOUND, C42_BOUND, invert_c3
from ..numkernel import FixedReal
from .expr import Computed, Expr, RatLit, certified_sign, eval_expr, lift, sqrt
from .families import (
    dual_coeffs,
    gen_coeffs,
    thm11_arctan_rhs,
    thm11_log_rhs,
    thm12_arccot_rhs,
    thm12_R_rhs,
    thm13_dual_rhs,
    thm13_gen_rhs,
)

MOMENT_FAMILIES = ("c3", "c42pos", "c42neg")


def _poly(x: Expr, coeffs: list[int]) -> Expr:
    """Horner form of sum coeffs[i] x^i built as an expression."""
    acc: Expr = RatLit(Fraction(coeffs[-1]))
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def _solve(a1: Expr, b1: Expr, r1: Expr, a2: Expr, b2: Expr, r2: Expr, det: Expr) -> tuple[Expr, Expr]:
    """(S1, S0) from a1 S1 + b1 S0 = r1 and a2 S1 + b2 S0 = r2."""
    try:
        s = certified_sign(det, max_digits=4000)
    except PrecisionExhausted:
        s = 0
    if s == 0:
        raise IllConditioned("determinant of the moment system is not certified nonzero")
    return (r1 * b2 - b1 * r2) / det, (a1 * r2 - r1 * a2) / det


def c3_system(x0: Fraction, x: Expr, branch: int):
    """Moment expressions for sum k^r x0^k / C(3k,k) with x the cubic parameter."""
    # arctan identity, k >= 1
    a1 = (2 * x - 3) ** 2
    b1 = 2 * x**2 + 2 * x - 3
    r1 = thm11_arctan_rhs(x, branch)
    # log identity moved to k >= 1 by removing t(x)
    a2 = _poly(x, [243, -567, 351, 9, -48, 4])
    b2 = _poly(x, [-81, 243, -189, 69, -48, 2])
    r2 = thm11_log_rhs(x) - b2
    det = -4 * x * (2 * x - 3) ** 5
    S1, S0 = _solve(a1, b1, r1, a2, b2, r2, det)
    # 6(1-x) S_{-1} + (2x^3+27x-27) S0 + (4x^3-27x+27) S1 = -2x^3
    Sm1 = (-2 * x**3 - (2 * x**3 + 27 * x - 27) * S0 - (4 * x**3 - 27 * x + 27) * S1) / (6 * (1 - x))
    return Sm1, S0, S1


def c42_pos_system(x0: Fraction):
    x = 1 / sqrt(RatLit(x0))
    a1, b1 = 2 * (4 * x + 1), 1 - 2 * x
    r1 = thm12_arccot_rhs(x) - b1
    a2, b2 = 2 * (4 * x - 1), -2 * x - 1
    r2 = thm12_R_rhs(x) - b2
    S1, S0 = _solve(a1, b1, r1, a2, b2, r2, -24 * x)
    return _c42_minus1(x0, S0, S1), S0, S1


def c42_neg_system(x0: Fraction):
    y = -x0
    x = RatLit(Fraction(1, 2)) + sqrt(4 / RatLit(y) + Fraction(1, 4))
    b1, a1 = gen_coeffs(x)
    r1 = thm13_gen_rhs(x, 1) - b1
    b2, a2 = dual_coeffs(x)
    r2 = thm13_dual_rhs(x, 1) - b2
    S1, S0 = _solve(a1, b1, r1, a2, b2, r2, -6 * (2 * x - 1) ** 5)
    return _c42_minus1(x0, S0, S1), S0, S1


def _c42_minus1(x0: Fraction, S0: Expr, S1: Expr) -> Expr:
    # 6 S_{-1} = (x0+32) S0 + 2(x0-16) S1 + x0
    return ((x0 + 32) * S0 + 2 * (x0 - 16) * S1 + x0) / 6


def moment_exprs(family: str, x0) -> tuple[Expr, Expr, Expr]:
    x0 = Fraction(x0)
    if x0 == 0:
        raise DomainError("x0 must be nonzero")
    if family == "c3":
        if not -C3_BOUND < x0 < C3_BOUND:
            raise DomainError(f"c3 needs -27/4 < x0 < 27/4, got {x0}")
        first = invert_c3(x0, 30)
        if first.exact is not None:
            x: Expr = RatLit(first.exact)
        else:
            x = Computed(f"cubic root for x0={x0}", lambda W: invert_c3(x0, W).value)
        # x is decreasing in x0 and equals -2 at x0 = 8/3
        branch = (x0 < Fraction(8, 3)) - (x0 > Fraction(8, 3))
        return c3_system(x0, lift(x), branch)
    if family == "c42pos":
        if not 0 < x0 < C42_BOUND:
            raise DomainError(f"c42pos needs 0 < x0 < 16, got {x0}")
        return c42_pos_system(x0)
    if family == "c42neg":
        if not -C42_BOUND < x0 < 0:
            raise DomainError(f"c42neg needs -16 < x0 < 0, got {x0}")
        return c42_neg_system(x0)
    raise ValueError(f"unknown moment family {family!r}; expected one of {MOMENT_FAMILIES}")


def moments(family: str, x0, digits: int) -> tuple[FixedReal, FixedReal, FixedReal]:
    """(S_-1, S_0, S_1), each with absolute error <= 10**-digits."""
    return tuple(eval_expr(e, digits) for e in moment_exprs(family, x0))

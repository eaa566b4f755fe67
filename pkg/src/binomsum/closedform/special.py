"""The piecewise kernels q(x) and R(x) as expression builders."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError
from ..numkernel import FixedReal
from .expr import PI, Expr, RatLit, arctan, arctanh, eval_expr, lift, log, sqrt


def q_expr(x: Expr, branch: int | None = None) -> Expr:
    """q(x) for -3 < x < 1.

    ``branch`` is the sign of x + 2; it is read off exactly when ``x`` is a
    rational literal and must be supplied otherwise.
    """
    x = lift(x)
    if isinstance(x, RatLit):
        v = x.value
        if not -3 < v < 1:
            raise DomainError(f"q(x) needs -3 < x < 1, got x = {v}")
        branch = (v > -2) - (v < -2)
    elif branch is None:
        raise ValueError("branch must be given for a non-rational argument")
    if branch == 0:
        return -(PI / 2)
    core = arctan(x / (x + 2) * sqrt((3 + x) / (1 - x)))
    return core if branch > 0 else core - PI


def q_func(x, digits: int) -> FixedReal:
    return eval_expr(q_expr(RatLit(Fraction(x))), digits)


def R_expr(y: Expr, branch: int | None = None) -> Expr:
    """R(y) = sqrt(y) arctanh(1/sqrt(y)), continued to y < 0.

    ``branch`` is +1 for y > 1 and -1 for y < 0; for a rational literal it is
    derived, and the removable point y = -1 is allowed (value pi/4).
    """
    y = lift(y)
    if isinstance(y, RatLit):
        v = y.value
        if 0 <= v <= 1:
            raise DomainError(f"R(y) needs y > 1 or y < 0, got y = {v}")
        branch = 1 if v > 1 else -1
        if v == -1:
            return PI / 4
    elif branch not in (1, -1):
        raise ValueError("branch must be +1 or -1 for a non-rational argument")
    if branch > 0:
        r = sqrt(y)
        if isinstance(r, RatLit):
            s = r.value
            return RatLit(s / 2) * log(RatLit((s + 1) / (s - 1)))
        return r * arctanh(1 / r)
    r = sqrt(-y)
    return r * arctan(1 / r)


def R_func(y, digits: int) -> FixedReal:
    return eval_expr(R_expr(RatLit(Fraction(y))), digits)

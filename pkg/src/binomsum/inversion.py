"""Map a series argument x0 back to the parameter of the closed-form families.

For C(3k,k) the parameter is the unique real x in (-3, c) with x^3/(x-1) = x0,
where c is the positive root of 4t^3 + 27t - 27.  On (-inf, 1) the map
g(t) = t^3/(t-1) is strictly decreasing, so the root is unique and
f(t) = t^3 - x0*t + x0 = (t-1)(g(t) - x0) is negative left of it and positive
right of it.  c itself is never written down: every comparison against c is
the exact sign of 4t^3 + 27t - 27.

For C(4k,2k) with a negative argument x0 = -y the parameter is
x = 1/2 + sqrt(4/y + 1/4), which satisfies 4/(x(1-x)) = x0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .numkernel import FixedReal, elem_eval

C3_BOUND = Fraction(27, 4)
C42_BOUND = Fraction(16)


def c_sign(t: Fraction) -> int:
    """Sign of 4t^3 + 27t - 27; negative exactly when t < c."""
    v = 4 * t**3 + 27 * t - 27
    return (v > 0) - (v < 0)


def cubic_map(t: Fraction) -> Fraction:
    """t^3 / (t - 1)."""
    return t**3 / (t - 1)


@dataclass(frozen=True)
class CubicRoot:
    value: FixedReal
    residual_bound: Fraction
    bracket: tuple[Fraction, Fraction]
    exact: Fraction | None = None

    @property
    def is_exact(self) -> bool:
        return self.exact is not None


def _c_upper_start() -> Fraction:
    # a rational just below c: 4t^3+27t-27 < 0 at 0.8941
    t = Fraction(8941, 10000)
    assert c_sign(t) < 0
    return t


def _upper_bracket(x0: Fraction) -> Fraction:
    """A rational h with h < c and f(h) > 0, i.e. root < h < c."""
    p, q = x0.numerator, x0.denominator
    lo_c, hi_c = _c_upper_start(), Fraction(8942, 10000)
    assert c_sign(hi_c) > 0
    while True:
        if q * lo_c**3 - p * lo_c + p > 0:
            return lo_c
        mid = (lo_c + hi_c) / 2
        if c_sign(mid) < 0:
            lo_c = mid
        else:
            hi_c = mid


def invert_c3(x0, digits: int) -> CubicRoot:
    """Real root x in (-3, c) of x^3 = x0 (x - 1), to ``digits`` places."""
    x0 = Fraction(x0)
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if not -C3_BOUND < x0 < C3_BOUND:
        raise DomainError(f"x0 = {x0} is outside (-27/4, 27/4)")
    p, q = x0.numerator, x0.denominator
    # width 10^-W must also be below 1/(2 q^2) for the rational-root shortcut
    W = max(digits, 2 * len(str(q)) + 1) + 2
    lo_f, hi_f = Fraction(-3), _upper_bracket(x0)  # f(lo) < 0 < f(hi)
    width = Fraction(1, 10**W)
    while hi_f - lo_f > width:
        mid = (lo_f + hi_f) / 2
        s = q * mid**3 - p * mid + p
        if s == 0:
            lo_f = hi_f = mid
            break
        if s < 0:
            lo_f = mid
        else:
            hi_f = mid

    mid = (lo_f + hi_f) / 2
    cand = mid.limit_denominator(q)
    if q * cand**3 - p * cand + p == 0 and -3 < cand and c_sign(cand) < 0:
        eps = Fraction(1, 10 ** (W + 2))
        return CubicRoot(FixedReal.exact(cand, digits), Fraction(0), (cand - eps, cand + eps), cand)

    scaled = mid * 10**digits
    mant = round(scaled)
    err = (hi_f - lo_f) / 2 * 10**digits + abs(scaled - mant)
    res = abs(cubic_map(lo_f) - cubic_map(hi_f))
    return CubicRoot(FixedReal(mant, digits, err), res, (lo_f, hi_f), None)


def invert_c42(x0, digits: int) -> FixedReal:
    """x = 1/2 + sqrt(4/x0 + 1/4) for 0 < x0 < 16; then 4/(x(1-x)) = -x0."""
    x0 = Fraction(x0)
    if not 0 < x0 < C42_BOUND:
        raise DomainError(f"x0 = {x0} is outside (0, 16)")
    if digits < 1:
        raise ValueError("digits must be >= 1")
    r = elem_eval("sqrt", 4 / x0 + Fraction(1, 4), digits + 1)
    half = FixedReal.exact(Fraction(1, 2), digits + 1)
    v = r + half
    if v.err_ulp == 0:
        return FixedReal.exact(v.value, digits)
    return v.round_to(digits)

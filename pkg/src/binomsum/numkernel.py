"""Certified decimal fixed-point arithmetic and elementary functions.

A :class:`FixedReal` is a scaled integer ``mantissa * 10**-digits`` together with
an exact rational bound ``err_ulp`` on its distance to the real number it stands
for, measured in units of ``10**-digits``.  Arithmetic propagates these bounds
soundly.  Public entry points (``const_pi``, ``elem_eval``, ``fixed_arith``)
return values whose bound is at most one unit in the last place.

Nothing in this module knows about binomial series: pi comes from Machin-type
arctangent formulas and log from an atanh expansion, so the closed forms built
on top of it are an independent check on the series engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

from .errors import DivisionByPossiblyZero, DomainError, PrecisionExhausted

Rational = Fraction
Number = Union[int, Fraction, "FixedReal"]

ELEMENTARY = ("sqrt", "log", "arctan", "arcsin", "arctanh", "arccot", "arcsinh")

# Machin-type decompositions: pi = sum(coeff * arctan(1/inv)).
PI_FORMULAS: dict[str, tuple[tuple[int, int], ...]] = {
    "machin": ((16, 5), (-4, 239)),
    "gauss": ((48, 18), (32, 57), (-20, 239)),
    "stormer": ((176, 57), (28, 239), (-48, 682), (96, 12943)),
    "euler": ((4, 2), (4, 3)),
}

_ERR_DEN_CAP = 1 << 48
_MAX_SETTLE_ROUNDS = 12


class NeedMorePrecision(ArithmeticError):
    """Internal signal: an interval straddles a singularity or branch point."""


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b (ties upward), b > 0."""
    return (2 * a + b) // (2 * b)


def _cap(err: Fraction) -> Fraction:
    # Keep error denominators small; rounding is always upward.
    if err.denominator > _ERR_DEN_CAP:
        return Fraction(-((-err.numerator * _ERR_DEN_CAP) // err.denominator), _ERR_DEN_CAP)
    return err


@dataclass(frozen=True)
class FixedReal:
    """Scaled decimal integer with a certified absolute error bound."""

    mantissa: int
    digits: int
    err_ulp: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.digits < 0:
            raise ValueError("digits must be nonnegative")
        err = Fraction(self.err_ulp)
        if err < 0:
            raise ValueError("error bound must be nonnegative")
        object.__setattr__(self, "err_ulp", _cap(err))

    # -- construction -------------------------------------------------------
    @classmethod
    def exact(cls, x: int | Fraction, digits: int) -> "FixedReal":
        """Round a rational to ``digits`` places, recording the exact rounding error."""
        x = Fraction(x)
        scaled = x.numerator * 10**digits
        mant = _round_div(scaled, x.denominator)
        err = Fraction(abs(scaled - mant * x.denominator), x.denominator)
        return cls(mant, digits, err)

    # -- views --------------------------------------------------------------
    @property
    def value(self) -> Fraction:
        return Fraction(self.mantissa, 10**self.digits)

    @property
    def abs_err(self) -> Fraction:
        return self.err_ulp / 10**self.digits

    @property
    def lo(self) -> Fraction:
        return (self.mantissa - self.err_ulp) / 10**self.digits

    @property
    def hi(self) -> Fraction:
        return (self.mantissa + self.err_ulp) / 10**self.digits

    def contains(self, x: int | Fraction) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def sign(self) -> int | None:
        """Certified sign, or None when the interval contains zero but the value is not exactly zero."""
        if self.mantissa - self.err_ulp > 0:
            return 1
        if self.mantissa + self.err_ulp < 0:
            return -1
        if self.mantissa == 0 and self.err_ulp == 0:
            return 0
        return None

    def __float__(self) -> float:
        return self.mantissa / 10**self.digits

    def to_decimal(self) -> str:
        """Decimal string with exactly ``digits`` fractional digits."""
        neg = self.mantissa < 0
        s = str(abs(self.mantissa)).rjust(self.digits + 1, "0")
        if self.digits:
            s = s[: -self.digits] + "." + s[-self.digits:]
        return ("-" if neg else "") + s

    def __str__(self) -> str:
        return f"{self.to_decimal()} ± {float(self.err_ulp):.3g}e-{self.digits}"

    # -- rescaling ----------------------------------------------------------
    def round_to(self, digits: int) -> "FixedReal":
        if digits == self.digits:
            return self
        if digits > self.digits:
            k = 10 ** (digits - self.digits)
            return FixedReal(self.mantissa * k, digits, self.err_ulp * k)
        k = 10 ** (self.digits - digits)
        mant = _round_div(self.mantissa, k)
        resid = Fraction(abs(self.mantissa - mant * k), k)
        return FixedReal(mant, digits, self.err_ulp / k + resid)

    def _pair(self, other: Number) -> tuple["FixedReal", "FixedReal"]:
        if not isinstance(other, FixedReal):
            return self, FixedReal.exact(other, self.digits)
        d = max(self.digits, other.digits)
        return self.round_to(d), other.round_to(d)

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self) -> "FixedReal":
        return FixedReal(-self.mantissa, self.digits, self.err_ulp)

    def __abs__(self) -> "FixedReal":
        return -self if self.mantissa < 0 else self

    def __add__(self, other: Number) -> "FixedReal":
        a, b = self._pair(other)
        return FixedReal(a.mantissa + b.mantissa, a.digits, a.err_ulp + b.err_ulp)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "FixedReal":
        a, b = self._pair(other)
        return FixedReal(a.mantissa - b.mantissa, a.digits, a.err_ulp + b.err_ulp)

    def __rsub__(self, other: Number) -> "FixedReal":
        return (-self) + other

    def __mul__(self, other: Number) -> "FixedReal":
        if isinstance(other, int) and not isinstance(other, bool):
            return FixedReal(self.mantissa * other, self.digits, self.err_ulp * abs(other))
        a, b = self._pair(other)
        k = 10**a.digits
        prod = a.mantissa * b.mantissa
        mant = _round_div(prod, k)
        resid = Fraction(abs(prod - mant * k), k)
        prop = (abs(a.mantissa) * b.err_ulp + abs(b.mantissa) * a.err_ulp + a.err_ulp * b.err_ulp) / k
        return FixedReal(mant, a.digits, prop + resid)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "FixedReal":
        a, b = self._pair(other)
        bm = abs(b.mantissa)
        if bm <= b.err_ulp:
            raise DivisionByPossiblyZero("divisor interval contains zero")
        k = 10**a.digits
        num = a.mantissa * k
        den = b.mantissa
        if den < 0:
            num, den = -num, -den
        mant = _round_div(num, den)
        resid = Fraction(abs(num - mant * den), den)
        prop = Fraction(a.err_ulp * bm + abs(a.mantissa) * b.err_ulp, (bm - b.err_ulp) * bm) * k
        return FixedReal(mant, a.digits, prop + resid)

    def __rtruediv__(self, other: Number) -> "FixedReal":
        return FixedReal.exact(Fraction(other), self.digits) / self

    def __pow__(self, e: int) -> "FixedReal":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return 1 / (self ** (-e))
        result = FixedReal.exact(1, self.digits)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result


def settle(compute: Callable[[int], FixedReal], digits: int, guard: int = 10) -> FixedReal:
    """Run ``compute`` at ``digits + guard`` and round; widen the guard until the bound is <= 1 ulp."""
    for _ in range(_MAX_SETTLE_ROUNDS):
        try:
            r = compute(digits + guard).round_to(digits)
        except NeedMorePrecision:
            r = None
        if r is not None and r.err_ulp <= 1:
            return r
        guard = 2 * guard + 5
    raise PrecisionExhausted(f"could not reach {digits} digits")


# ---------------------------------------------------------------------------
# integer kernels at scale 10**P


def _atan_kernel(p: int, q: int, scale: int, hyperbolic: bool) -> tuple[int, int]:
    """atan(p/q) or atanh(p/q) times ``scale``, for 0 <= p/q <= 1/2.

    Returns (value, err) with |value - true*scale| <= err.
    """
    if p == 0:
        return 0, 0
    pw = scale * p // q
    total = pw
    x2n, x2d = p * p, q * q
    k = 0
    while True:
        pw = pw * x2n // x2d
        if pw == 0:
            break
        k += 1
        term = pw // (2 * k + 1)
        if hyperbolic or k % 2 == 0:
            total += term
        else:
            total -= term
    # each power carries < 4/3 ulp, each quotient one more; the dropped tail is < 4 ulp
    return total, 3 * k + 6


def _atan_inv(inv: int, scale: int) -> tuple[int, int]:
    return _atan_kernel(1, inv, scale, False)


@lru_cache(maxsize=64)
def _pi_raw(P: int, formula: str = "machin") -> FixedReal:
    scale = 10**P
    total, err = 0, 0
    for coeff, inv in PI_FORMULAS[formula]:
        v, e = _atan_inv(inv, scale)
        total += coeff * v
        err += abs(coeff) * e
    return FixedReal(total, P, err)


@lru_cache(maxsize=64)
def _log2_raw(P: int) -> FixedReal:
    v, e = _atan_kernel(1, 3, 10**P, True)
    return FixedReal(2 * v, P, 2 * e)


def _atan_raw(x: Fraction, P: int) -> FixedReal:
    if x == 0:
        return FixedReal(0, P)
    sgn = 1 if x > 0 else -1
    ax = abs(x)
    if ax > 2:
        v, e = _atan_kernel(ax.denominator, ax.numerator, 10**P, False)
        r = _pi_raw(P) * Fraction(1, 2) - FixedReal(v, P, e)
    elif ax * 2 > 1:
        y = (ax - 1) / (ax + 1)
        v, e = _atan_kernel(abs(y.numerator), y.denominator, 10**P, False)
        if y < 0:
            v = -v
        r = _pi_raw(P) * Fraction(1, 4) + FixedReal(v, P, e)
    else:
        v, e = _atan_kernel(ax.numerator, ax.denominator, 10**P, False)
        r = FixedReal(v, P, e)
    return r if sgn > 0 else -r


def _atanh_raw(x: Fraction, P: int) -> FixedReal:
    if abs(x) >= 1:
        raise DomainError(f"arctanh undefined at {x}")
    if abs(x) * 2 <= 1:
        v, e = _atan_kernel(abs(x.numerator), x.denominator, 10**P, True)
        return FixedReal(v if x >= 0 else -v, P, e)
    half = _log_raw((1 + x) / (1 - x), P + 1)
    return (half * Fraction(1, 2)).round_to(P)


def _log_raw(x: Fraction, P: int) -> FixedReal:
    if x <= 0:
        raise DomainError(f"log undefined at {x}")
    if x == 1:
        return FixedReal(0, P)
    # x = u * 2**j with u in [2/3, 4/3]
    j = x.numerator.bit_length() - x.denominator.bit_length()
    while True:
        u = x / Fraction(2) ** j
        if 3 * u < 2:
            j -= 1
        elif 3 * u > 4:
            j += 1
        else:
            break
    extra = len(str(abs(j))) + 1
    Q = P + extra
    y = (u - 1) / (u + 1)
    v, e = _atan_kernel(abs(y.numerator), y.denominator, 10**Q, True)
    r = FixedReal(2 * v if y >= 0 else -2 * v, Q, 2 * e)
    if j:
        r = r + _log2_raw(Q) * j
    return r.round_to(P)


def _sqrt_raw(x: Fraction, P: int) -> FixedReal:
    if x < 0:
        raise DomainError(f"sqrt undefined at {x}")
    top = x.numerator * 10 ** (2 * P)
    fl = top // x.denominator
    v = math.isqrt(fl)
    exact = v * v * x.denominator == top
    return FixedReal(v, P, 0 if exact else 1)


def _arcsin_raw(x: Fraction, P: int) -> FixedReal:
    if abs(x) > 1:
        raise DomainError(f"arcsin undefined at {x}")
    if x == 0:
        return FixedReal(0, P)
    if abs(x) == 1:
        r = _pi_raw(P) * Fraction(1, 2)
        return r if x > 0 else -r
    W = P + 5
    s = _sqrt_raw(1 - x * x, W)
    if 2 * x * x <= 1:
        r = apply_fn("arctan", FixedReal.exact(x, W) / s)
    else:
        r = _pi_raw(W) * Fraction(1, 2) - apply_fn("arctan", s / FixedReal.exact(abs(x), W))
        if x < 0:
            r = -r
    return r.round_to(P)


def _arcsinh_raw(x: Fraction, P: int) -> FixedReal:
    if x == 0:
        return FixedReal(0, P)
    if x < 0:
        return -_arcsinh_raw(-x, P)
    W = P + 5
    w = _sqrt_raw(x * x + 1, W) + x
    return apply_fn("log", w).round_to(P)


def _raw(fn: str, x: Fraction, P: int) -> FixedReal:
    if fn == "sqrt":
        return _sqrt_raw(x, P)
    if fn == "log":
        return _log_raw(x, P)
    if fn == "arctan":
        return _atan_raw(x, P)
    if fn == "arctanh":
        return _atanh_raw(x, P)
    if fn == "arccot":
        if x <= 0:
            raise DomainError(f"arccot requires a positive argument, got {x}")
        return _atan_raw(1 / x, P)
    if fn == "arcsin":
        return _arcsin_raw(x, P)
    if fn == "arcsinh":
        return _arcsinh_raw(x, P)
    raise ValueError(f"unknown elementary function {fn!r}")


def rational_fn(fn: str, x: Fraction, P: int) -> FixedReal:
    """fn(x) at scale 10**-P for a rational x; error bound a little above 1/2 ulp."""
    G = 6 + len(str(P))
    return _raw(fn, Fraction(x), P + G).round_to(P)


def apply_fn(fn: str, v: FixedReal) -> FixedReal:
    """fn applied to an interval value, at the scale of ``v``.

    All seven functions are monotone on their domains, so the image of the
    interval is bracketed by the images of its endpoints.
    """
    d = v.digits
    if v.err_ulp == 0:
        return rational_fn(fn, v.value, d)
    lo, hi = v.lo, v.hi
    if fn == "sqrt":
        if hi < 0:
            raise DomainError("sqrt of a certified negative value")
        lo = max(lo, Fraction(0))
    elif fn == "log":
        if hi <= 0:
            raise DomainError("log of a certified nonpositive value")
        if lo <= 0:
            raise NeedMorePrecision("log argument interval touches zero")
    elif fn == "arcsin":
        if lo > 1 or hi < -1:
            raise DomainError("arcsin argument certified outside [-1, 1]")
        lo, hi = max(lo, Fraction(-1)), min(hi, Fraction(1))
    elif fn == "arctanh":
        if lo >= 1 or hi <= -1:
            raise DomainError("arctanh argument certified outside (-1, 1)")
        if lo <= -1 or hi >= 1:
            raise NeedMorePrecision("arctanh argument interval touches +-1")
    elif fn == "arccot":
        if hi <= 0:
            raise DomainError("arccot argument certified nonpositive")
        if lo <= 0:
            raise NeedMorePrecision("arccot argument interval touches zero")
    f_lo = rational_fn(fn, lo, d)
    f_hi = rational_fn(fn, hi, d)
    if fn == "arccot":
        f_lo, f_hi = f_hi, f_lo
    low = f_lo.mantissa - f_lo.err_ulp
    high = f_hi.mantissa + f_hi.err_ulp
    mid = (low + high) / 2
    mant = _round_div(mid.numerator, mid.denominator)
    return FixedReal(mant, d, (high - low) / 2 + abs(mid - mant))


# ---------------------------------------------------------------------------
# public operations


@lru_cache(maxsize=32)
def const_pi(digits: int, formula: str = "machin") -> FixedReal:
    """pi to ``digits`` places (absolute error <= 10**-digits)."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if formula not in PI_FORMULAS:
        raise ValueError(f"unknown pi formula {formula!r}")
    return settle(lambda P: _pi_raw(P, formula), digits, guard=4 + len(str(digits)))


def elem_eval(fn: str, x: int | Fraction | str, digits: int) -> FixedReal:
    """Elementary function of a rational argument, |error| <= 10**-digits.

    Raises DomainError when x lies outside the real domain of fn.
    """
    if fn not in ELEMENTARY:
        raise ValueError(f"unknown elementary function {fn!r}")
    if digits < 1:
        raise ValueError("digits must be >= 1")
    x = Fraction(x)
    return settle(lambda P: rational_fn(fn, x, P), digits)


def fixed_arith(op: str, lhs: FixedReal, rhs: FixedReal | None = None) -> FixedReal:
    """Binary (or, for ``sqrt_of``, unary) operation with the result coarsened until err <= 1 ulp."""
    if op == "add":
        r = lhs + rhs
    elif op == "sub":
        r = lhs - rhs
    elif op == "mul":
        r = lhs * rhs
    elif op == "div":
        r = lhs / rhs
    elif op == "sqrt_of":
        if rhs is not None:
            raise ValueError("sqrt_of takes a single operand")
        r = apply_fn("sqrt", lhs)
    else:
        raise ValueError(f"unknown op {op!r}")
    while r.err_ulp > 1 and r.digits > 0:
        r = r.round_to(r.digits - 1)
    return r

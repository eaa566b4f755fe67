"""Beta-integral oracle: sum_{k>=1} (ak+b) x^k / C(mk,nk) = n * int_0^1 T(t) dt.

T is evaluated exactly at dyadic nodes and rounded once to a fixed scale;
adaptive Simpson then works on those scaled integers.  The returned error is
the usual Richardson estimate, so this oracle is independent but heuristic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ToleranceNotReached
from .numkernel import FixedReal

MAX_SUBINTERVALS = 1 << 20
MIN_DEPTH = 4
# work below the requested tolerance so the rounded output still meets it
INNER_TOL_FACTOR = 100
_SCALE_DIGITS = 28
_SCALE = 10**_SCALE_DIGITS


@dataclass(frozen=True)
class QuadParams:
    m: int
    n: int
    a: Fraction
    b: Fraction
    x: Fraction
    tol: Fraction = Fraction(1, 10**8)

    def __post_init__(self):
        for name in ("a", "b", "x", "tol"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not (0 < self.n < self.m):
            raise DomainError(f"need integers m > n >= 1, got m={self.m}, n={self.n}")
        if self.tol <= 0:
            raise DomainError("tol must be positive")
        bound = Fraction(self.m**self.m, self.n**self.n * (self.m - self.n) ** (self.m - self.n))
        if abs(self.x) >= bound:
            raise DomainError(f"|x| must be below m^m/(n^n (m-n)^(m-n)) = {bound}")


def integrand_T(p: QuadParams, t) -> Fraction:
    """Exact T_{m,n}(a, b, x; t) at a rational t in [0, 1]."""
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise DomainError("t must lie in [0, 1]")
    u = t**p.n * (1 - t) ** (p.m - p.n) * p.x
    pre = t ** (p.n - 1) * (1 - t) ** (p.m - p.n) * p.x
    return pre * ((p.a - p.b) * u + p.a + p.b) / (1 - u) ** 3


def _node(p: QuadParams, t: Fraction) -> int:
    v = integrand_T(p, t) * _SCALE
    return round(v)


def quad_series(p: QuadParams) -> FixedReal:
    """n * int_0^1 T dt by adaptive Simpson; error estimate is heuristic."""
    if p.x == 0 or (p.a == 0 and p.b == 0):
        return FixedReal(0, 20, Fraction(0))
    cache: dict[Fraction, int] = {}

    def f(t: Fraction) -> int:
        v = cache.get(t)
        if v is None:
            v = cache[t] = _node(p, t)
        return v

    def simpson(a: Fraction, b: Fraction) -> Fraction:
        mid = (a + b) / 2
        return (b - a) * (f(a) + 4 * f(mid) + f(b)) / 6

    tol_scaled = p.tol * _SCALE / (p.n * INNER_TOL_FACTOR)
    total = Fraction(0)
    err_est = Fraction(0)
    leaves = 0
    # stack of (a, b, whole-interval estimate, depth)
    stack = [(Fraction(0), Fraction(1), simpson(Fraction(0), Fraction(1)), 0)]
    while stack:
        a, b, whole, depth = stack.pop()
        mid = (a + b) / 2
        left, right = simpson(a, mid), simpson(mid, b)
        delta = left + right - whole
        local_tol = tol_scaled * (b - a) / 2
        if depth >= MIN_DEPTH and abs(delta) <= 15 * local_tol:
            total += left + right + delta / 15
            err_est += abs(delta) / 15
            leaves += 1
            continue
        if leaves + len(stack) + 2 > MAX_SUBINTERVALS:
            raise ToleranceNotReached(f"adaptive Simpson exceeded {MAX_SUBINTERVALS} subintervals")
        stack.append((mid, b, right, depth + 1))
        stack.append((a, mid, left, depth + 1))
    value = p.n * total / _SCALE
    # rounding of every node contributes at most 1/2 unit of the node scale
    err = p.n * (err_est + Fraction(1, 2)) / _SCALE
    # report at the finest scale where the estimate fits in half an ulp
    digits = min(20, math.floor(-math.log10(float(2 * err))))
    while digits > 0 and err * 10**digits > Fraction(1, 2):
        digits -= 1
    scaled = value * 10**digits
    mant = round(scaled)
    return FixedReal(mant, digits, err * 10**digits + abs(scaled - mant))

"""Exact and digit-targeted summation of sum p(k) x^k / (k^e (2k-1)^f C(mk, nk)).

The hypergeometric core ``c_k = x^k / C(mk, nk)`` satisfies
``c_{k+1} / c_k = x * P(k) / Q(k)`` with

    P(k) = prod_{i=1..n} (nk + i) * prod_{j=1..m-n} ((m-n)k + j)
    Q(k) = prod_{i=1..m} (mk + i)

Binary splitting runs over that recurrence and applies the weight
``p(k) / (k^e (2k-1)^f)`` per leaf, so zeros of ``p`` are harmless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .errors import ConvergenceError, RatioNotCapped, SpecError, UnknownTelescope
from .numkernel import FixedReal

try:  # GMP integers make the product tree and the big binomials much faster
    import gmpy2

    _mpz = gmpy2.mpz
    _comb = gmpy2.comb
except ImportError:  # pragma: no cover
    _mpz = int
    _comb = math.comb

MAX_TERMS = 5_000_000


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class TermSpec:
    """One series sum_{k >= k0} p(k) x^k / (k^e (2k-1)^f C(mk, nk))."""

    m: int
    n: int
    x: Fraction
    num_coeffs: tuple[Fraction, ...]
    e: int = 0
    f: int = 0
    k0: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", _frac(self.x))
        object.__setattr__(self, "num_coeffs", tuple(_frac(c) for c in self.num_coeffs))
        if not (isinstance(self.m, int) and isinstance(self.n, int) and 0 < self.n < self.m):
            raise SpecError(f"need integers 0 < n < m, got m={self.m}, n={self.n}")
        if self.e not in (0, 1, 2):
            raise SpecError(f"e must be 0, 1 or 2, got {self.e}")
        if self.f not in (0, 1):
            raise SpecError(f"f must be 0 or 1, got {self.f}")
        if self.k0 not in (0, 1):
            raise SpecError(f"k0 must be 0 or 1, got {self.k0}")
        if self.e > 0 and self.k0 != 1:
            raise SpecError("a power of k in the denominator requires k0 = 1")
        if not self.num_coeffs:
            raise SpecError("numerator polynomial is empty")
        if self.num_coeffs[-1] == 0:
            raise SpecError("leading numerator coefficient must be nonzero")
        if self.rho_inf >= 1:
            raise ConvergenceError(f"|x| * n^n (m-n)^(m-n) / m^m = {self.rho_inf} is not < 1")

    @property
    def rho_inf(self) -> Fraction:
        """Limit of |t_{k+1} / t_k|."""
        m, n = self.m, self.n
        return abs(self.x) * Fraction(n**n * (m - n) ** (m - n), m**m)

    @property
    def degree(self) -> int:
        return len(self.num_coeffs) - 1

    def p(self, k: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.num_coeffs):
            acc = acc * k + c
        return acc

    def weight(self, k: int) -> Fraction:
        return self.p(k) / (k**self.e * (2 * k - 1) ** self.f)


@dataclass(frozen=True)
class TailBound:
    start: int
    bound: Fraction
    ratio_cap: Fraction


@dataclass(frozen=True)
class SumResult:
    value: FixedReal
    terms_used: int
    last_index: int


# ---------------------------------------------------------------------------
# term evaluation


def term_at(spec: TermSpec, k: int) -> Fraction:
    if k < spec.k0:
        raise IndexError(f"k={k} below start index {spec.k0}")
    return spec.weight(k) * spec.x**k / math.comb(spec.m * k, spec.n * k)


def sum_naive(spec: TermSpec, N: int) -> Fraction:
    """Direct exact accumulation of terms k0..N (reference oracle)."""
    if N < spec.k0:
        raise IndexError(f"N={N} below start index {spec.k0}")
    return sum((term_at(spec, k) for k in range(spec.k0, N + 1)), Fraction(0))


# ---------------------------------------------------------------------------
# binary splitting


def _linear_factors(m: int, n: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    num = [(n, i) for i in range(1, n + 1)] + [(m - n, j) for j in range(1, m - n + 1)]
    den = [(m, i) for i in range(1, m + 1)]
    return num, den


def _prod_at(factors: Sequence[tuple[int, int]], k: int) -> int:
    r = 1
    for a, b in factors:
        r *= a * k + b
    return r


class _Splitter:
    def __init__(self, spec: TermSpec):
        self.spec = spec
        self.pf, self.qf = _linear_factors(spec.m, spec.n)
        self.xn, self.xd = _mpz(spec.x.numerator), _mpz(spec.x.denominator)
        L = 1
        for c in spec.num_coeffs:
            L = L * c.denominator // math.gcd(L, c.denominator)
        self.L = L
        self.icoeffs = [int(c * L) for c in spec.num_coeffs]
        self.unit_weight_den = L == 1 and spec.e == 0 and spec.f == 0

    def _leaf(self, k: int) -> tuple[int, int, int, int]:
        s = self.spec
        p = self.xn * _prod_at(self.pf, k)
        q = self.xd * _prod_at(self.qf, k)
        wn = 0
        for c in reversed(self.icoeffs):
            wn = wn * k + c
        b = self.L * k**s.e * (2 * k - 1) ** s.f
        return p, q, b, wn * q

    def run(self, a: int, b: int) -> tuple[int, int, int, int]:
        if b - a == 1:
            return self._leaf(a)
        mid = (a + b) // 2
        p1, q1, b1, t1 = self.run(a, mid)
        p2, q2, b2, t2 = self.run(mid, b)
        if self.unit_weight_den:
            return p1 * p2, q1 * q2, 1, q2 * t1 + p1 * t2
        return p1 * p2, q1 * q2, b1 * b2, b2 * q2 * t1 + b1 * p1 * t2


def _binsplit_parts(spec: TermSpec, N: int) -> tuple[int, int]:
    """Unreduced numerator and denominator of sum_{k=k0}^{N} t_k."""
    if N < spec.k0:
        raise IndexError(f"N={N} below start index {spec.k0}")
    _, q, b, t = _Splitter(spec).run(spec.k0, N + 1)
    c0 = Fraction(1) if spec.k0 == 0 else spec.x / math.comb(spec.m, spec.n)
    num, den = int(c0.numerator * t), int(c0.denominator * b * q)
    if den < 0:
        num, den = -num, -den
    return num, den


def sum_binsplit(spec: TermSpec, N: int) -> Fraction:
    """Exact sum of terms k0..N by binary splitting; equals ``sum_naive``."""
    num, den = _binsplit_parts(spec, N)
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# tail bounds


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _factors_poly(factors: Sequence[tuple[int, int]], shift: int = 0) -> list[int]:
    poly = [1]
    for a, b in factors:
        poly = _poly_mul(poly, [a * shift + b, a])
    return poly


def _poly_eval(poly: Sequence[int], k: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = acc * k + c
    return acc


@lru_cache(maxsize=None)
def monotone_from(m: int, n: int) -> tuple[int, bool]:
    """Index j0 beyond which P(j)/Q(j) is monotone, and whether it is non-increasing there.

    D(j) = P(j) Q(j+1) - P(j+1) Q(j) is an integer polynomial; its sign past the
    Cauchy root bound equals the sign of its leading coefficient, and the
    finitely many integers below the bound are checked directly.
    """
    pf, qf = _linear_factors(m, n)
    P0, Q0 = _factors_poly(pf), _factors_poly(qf)
    P1, Q1 = _factors_poly(pf, 1), _factors_poly(qf, 1)
    a, b = _poly_mul(P0, Q1), _poly_mul(P1, Q0)
    size = max(len(a), len(b))
    D = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(size)]
    while len(D) > 1 and D[-1] == 0:
        D.pop()
    lead = D[-1]
    decreasing = lead > 0
    if all((c >= 0) if decreasing else (c <= 0) for c in D):
        # no sign changes: no positive root (Descartes)
        return 0, decreasing
    bound = 1 + max((abs(c) for c in D[:-1]), default=0) // abs(lead) + 1
    j0 = 0
    for j in range(bound, -1, -1):
        v = _poly_eval(D, j)
        if (v < 0) if decreasing else (v > 0):
            j0 = j + 1
            break
    return j0, decreasing


def core_ratio(spec: TermSpec, k: int) -> Fraction:
    """|c_{k+1} / c_k| as an exact rational."""
    pf, qf = _linear_factors(spec.m, spec.n)
    return abs(spec.x) * Fraction(_prod_at(pf, k), _prod_at(qf, k))


def ratio_sup(spec: TermSpec, start: int) -> Fraction:
    """Certified sup_{j >= start} |c_{j+1} / c_j|."""
    j0, decreasing = monotone_from(spec.m, spec.n)
    best = max((core_ratio(spec, j) for j in range(start, max(start, j0) + 1)), default=Fraction(0))
    if not decreasing:
        best = max(best, spec.rho_inf)
    return best


def _tail_parts(spec: TermSpec, N: int) -> tuple[Fraction, Fraction, int, int]:
    """(prefactor, sigma, num, den) with tail <= prefactor * num / den and sigma the ratio cap."""
    if N < spec.k0:
        raise IndexError(f"N={N} below start index {spec.k0}")
    K = N + 1
    rho = ratio_sup(spec, K)
    d_eff = spec.degree - spec.e - spec.f
    growth = Fraction(K + 1, K) ** max(d_eff, 0)
    sigma = rho * growth
    if sigma >= 1:
        raise RatioNotCapped(f"ratio cap {float(sigma):.6g} >= 1 at N={N}")
    M = sum(abs(c) for c in spec.num_coeffs)
    # |w(k)| <= M k^(d - e - f) for k >= 1, since k / (2k-1) <= 1
    pre = M * Fraction(K) ** d_eff / (1 - sigma)
    num = _mpz(abs(spec.x.numerator)) ** K
    den = _mpz(spec.x.denominator) ** K * _comb(spec.m * K, spec.n * K)
    return pre, sigma, num, den


def tail_bound(spec: TermSpec, N: int) -> TailBound:
    """Rigorous bound on |sum_{k > N} t_k|."""
    pre, sigma, num, den = _tail_parts(spec, N)
    return TailBound(N, pre * Fraction(int(num), int(den)), sigma)


def _tail_ok(spec: TermSpec, N: int, digits: int) -> bool:
    """True when the certified tail after N is at most 10**-digits / 2."""
    try:
        pre, _, num, den = _tail_parts(spec, N)
    except RatioNotCapped:
        return False
    return 2 * 10**digits * pre.numerator * num <= pre.denominator * den


def _log10_tail_estimate(spec: TermSpec, N: int) -> float:
    """Floating-point log10 of the tail bound; used only to pick a candidate N."""
    K = N + 1
    m, n = spec.m, spec.n
    log_comb = math.lgamma(m * K + 1) - math.lgamma(n * K + 1) - math.lgamma((m - n) * K + 1)
    sigma = float(core_ratio(spec, K)) * ((K + 1) / K) ** max(spec.degree - spec.e - spec.f, 0)
    if sigma >= 1:
        return math.inf
    M = float(sum(abs(c) for c in spec.num_coeffs))
    log_pre = math.log10(M) + (spec.degree - spec.e - spec.f) * math.log10(K) - math.log10(1 - sigma)
    return log_pre + K * math.log10(abs(spec.x)) - log_comb / math.log(10)


def choose_cutoff(spec: TermSpec, digits: int, max_terms: int = MAX_TERMS) -> int:
    """An N whose certified tail bound is <= 10**-digits / 2.

    A log-domain estimate locates the smallest plausible N (doubling, then
    bisection); the exact rational test then confirms it, nudging N upward if
    the estimate was optimistic.
    """
    k0 = spec.k0
    if spec.x == 0:
        return k0
    target = -digits - math.log10(2)
    lo, hi = k0 - 1, k0 + 4
    while _log10_tail_estimate(spec, hi) > target:
        lo = hi
        hi = k0 + 2 * (hi - k0 + 1)
        if hi - k0 > max_terms:
            raise RatioNotCapped(f"no certified cut-off within {max_terms} terms")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _log10_tail_estimate(spec, mid) <= target:
            hi = mid
        else:
            lo = mid
    N = hi
    while not _tail_ok(spec, N, digits):
        N += 1 + N // 1000
        if N - k0 > max_terms:
            raise RatioNotCapped(f"no certified cut-off within {max_terms} terms")
    return N


def sum_digits_info(spec: TermSpec, digits: int) -> SumResult:
    if digits < 1:
        raise ValueError("digits must be >= 1")
    N = choose_cutoff(spec, digits + 1)
    num, den = _binsplit_parts(spec, N)
    scaled = num * 10**digits
    mant = (2 * scaled + den) // (2 * den)
    # rounding <= 1/2 ulp, certified tail <= 1/20 ulp
    return SumResult(FixedReal(mant, digits, Fraction(11, 20)), N - spec.k0 + 1, N)


def sum_digits(spec: TermSpec, digits: int) -> FixedReal:
    """Series value with absolute error <= 10**-digits."""
    return sum_digits_info(spec, digits).value


# ---------------------------------------------------------------------------
# finite telescoping identities


@dataclass(frozen=True)
class Telescope:
    ident: str
    summand: Callable[[Fraction, int], Fraction]
    closed: Callable[[Fraction, int], Fraction]
    note: str = ""
    printed_summand: Callable[[Fraction, int], Fraction] | None = field(default=None, compare=False)


def _c3(k: int) -> int:
    return math.comb(3 * k, k)


def _c42(k: int) -> int:
    return math.comb(4 * k, 2 * k)


def _r11_arg(x: Fraction) -> Fraction:
    return x**3 / (x - 1)


TELESCOPES: dict[str, Telescope] = {
    t.ident: t
    for t in (
        Telescope(
            "L61-1",
            lambda x, k: ((4 * x - 27) * k * k + (2 * x + 27) * k - 2 * x - 6) * x**k / ((2 * k - 1) * _c3(k)),
            lambda x, n: -2 * x + 2 * (n + 1) * x ** (n + 1) / _c3(n),
        ),
        Telescope(
            "L61-2",
            lambda x, k: ((4 * x - 27) * k * k + (27 - 2 * x) * k - 6) * x**k / (k * (2 * k - 1) * _c3(k)),
            lambda x, n: -2 * x + 2 * x ** (n + 1) / _c3(n),
            note="printed constant term -2x-6 corrected to -6",
            printed_summand=lambda x, k: ((4 * x - 27) * k * k + (27 - 2 * x) * k - 2 * x - 6)
            * x**k
            / (k * (2 * k - 1) * _c3(k)),
        ),
        Telescope(
            "L61-3",
            lambda x, k: (2 * (x - 16) * k * k + (x + 32) * k - x - 6) * x**k / ((2 * k - 1) * _c42(k)),
            lambda x, n: -x + (n + 1) * x ** (n + 1) / _c42(n),
        ),
        Telescope(
            "L61-4",
            lambda x, k: (2 * (x - 16) * k * k + (32 - x) * k - 6) * x**k / (k * (2 * k - 1) * _c42(k)),
            lambda x, n: -x + x ** (n + 1) / _c42(n),
        ),
        Telescope(
            "L61-5",
            lambda x, k: ((4 * x - 27) * k * k + (6 * x + 27) * k + 2 * x - 6) * x**k / _c3(k),
            lambda x, n: -2 * x + 2 * (n + 1) * (2 * n + 1) * x ** (n + 1) / _c3(n),
            note="printed constant term -6 corrected to 2x-6",
            printed_summand=lambda x, k: ((4 * x - 27) * k * k + (6 * x + 27) * k - 6) * x**k / _c3(k),
        ),
        Telescope(
            "L61-6",
            lambda x, k: (2 * (x - 16) * k * k + (3 * x + 32) * k + x - 6) * x**k / _c42(k),
            lambda x, n: -x + (n + 1) * (2 * n + 1) * x ** (n + 1) / _c42(n),
            note="printed constant term -6 corrected to x-6",
            printed_summand=lambda x, k: (2 * (x - 16) * k * k + (3 * x + 32) * k - 6) * x**k / _c42(k),
        ),
        Telescope(
            "R11-C3",
            lambda x, k: _r11_arg(x) ** k
            / _c3(k)
            * (Fraction(6, k) * (1 - x) + (2 * x**3 + 27 * x - 27) + (4 * x**3 - 27 * x + 27) * k),
            lambda x, n: 2 * x**3 * (Fraction(2 * n + 1, _c3(n)) * _r11_arg(x) ** n - 1),
            note="x is the cubic parameter; the series argument is x^3/(x-1), so x != 1",
        ),
        Telescope(
            "S1-C42",
            lambda x, k: x**k / _c42(k) * (Fraction(-6, k) + x + 32 + 2 * k * (x - 16)),
            lambda x, n: -x + (2 * n + 1) * x ** (n + 1) / _c42(n),
        ),
    )
}


def telescope_check(ident: str, n: int, x: Fraction | int | str, printed: bool = False) -> Fraction:
    """Exact residual LHS(n, x) - RHS(n, x) of a finite identity.

    ``printed=True`` evaluates the summand as typeset in the source, which for
    three of the identities differs from the form that actually telescopes.
    """
    try:
        tel = TELESCOPES[ident]
    except KeyError:
        raise UnknownTelescope(ident) from None
    if n < 1:
        raise ValueError("n must be positive")
    x = Fraction(x)
    if ident == "R11-C3" and x == 1:
        raise ValueError("R11-C3 is undefined at x = 1")
    summand = tel.printed_summand if (printed and tel.printed_summand) else tel.summand
    lhs = sum((summand(x, k) for k in range(1, n + 1)), Fraction(0))
    return lhs - tel.closed(x, n)

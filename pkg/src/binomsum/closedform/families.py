"""Parametrized identity families and the Identity record.

Every builder works in exact rational arithmetic: polynomial coefficients are
expanded with Fractions, and the right-hand side is an Expr whose rational
parts are folded on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..errors import DomainError
from ..inversion import c_sign
from ..series import TermSpec
from .expr import Expr, RatLit, arccot, eval_expr, log, sqrt
from .special import R_expr, q_expr

STATUSES = ("verified", "pending", "known-typo")


@dataclass(frozen=True)
class Identity:
    """A series (lhs) paired with its claimed closed form (rhs)."""

    id: str
    lhs: TermSpec
    rhs: Expr
    domain_note: str = ""
    paper_ref: str = ""
    status: str = "pending"
    family: str | None = None
    max_digits: int | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"status must be one of {STATUSES}, got {self.status!r}")


@dataclass(frozen=True)
class Family:
    name: str
    domain_text: str
    in_domain: Callable[[Fraction], bool]
    build: Callable[[Fraction], tuple[TermSpec, Expr]]
    source: str


def _coeffs(*cs: Fraction) -> tuple[Fraction, ...]:
    cs = list(cs)
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _r(v) -> RatLit:
    return RatLit(Fraction(v))


# --- C(2k,k) log family -----------------------------------------------------


def _c2k_log(n: Fraction):
    spec = TermSpec(2, 1, 1 / (-n * (n + 1)), _coeffs(Fraction(3), 2 * (2 * n + 1) ** 2))
    rhs = _r(-2 * n * (n + 1) / (2 * n + 1)) * log(_r(1 + 1 / n))
    return spec, rhs


# --- C(3k,k): arctan and log parts --------------------------------------------


def s_poly(x: Fraction) -> Fraction:
    return (x + 3) * (2 * x - 3) ** 2 * (x * x - 12 * x + 9)


def t_poly(x: Fraction) -> Fraction:
    return 2 * x**5 - 48 * x**4 + 69 * x**3 - 189 * x**2 + 243 * x - 81


def thm11_arctan_rhs(x: Expr, branch: int | None = None) -> Expr:
    """Closed form of sum_{k>=1} ((2x-3)^2 k + 2x^2+2x-3) (x^3/(x-1))^k / C(3k,k)."""
    head = -2 * x**3 * (x + 7) / (x + 3) ** 2
    tail = 8 * x**2 * (x - 1) * q_expr(x, branch) / ((x + 3) ** 2 * sqrt((1 - x) * (3 + x)))
    return head + tail


def thm11_log_rhs(x: Expr) -> Expr:
    """Closed form of sum_{k>=0} (s(x) k + t(x)) (x^3/(x-1))^k / C(3k,k)."""
    return 12 * x**2 * (1 - x) * log(1 - x) - 27 * (1 - x) * (x**2 - 6 * x + 3)


def _thm11_domain(x: Fraction) -> bool:
    return -3 < x and c_sign(x) < 0


def _thm11_arctan(x: Fraction):
    spec = TermSpec(3, 1, x**3 / (x - 1), _coeffs(2 * x * x + 2 * x - 3, (2 * x - 3) ** 2), k0=1)
    return spec, thm11_arctan_rhs(_r(x))


def _thm11_log(x: Fraction):
    spec = TermSpec(3, 1, x**3 / (x - 1), _coeffs(t_poly(x), s_poly(x)))
    return spec, thm11_log_rhs(_r(x))


def a_n(n: Fraction) -> Fraction:
    return (3 * n + 1) * (3 * n - 2) ** 2 * (9 * n * n - 12 * n + 1)


def b_n(n: Fraction) -> Fraction:
    return 81 * n**5 - 243 * n**4 + 189 * n**3 - 69 * n**2 + 48 * n - 2


def _cor12(n: Fraction):
    spec = TermSpec(3, 1, 1 / ((1 - n) * n * n), _coeffs(-b_n(n), a_n(n)))
    rhs = _r(3 * n * n * (n - 1)) * (4 * log(_r(1 - 1 / n)) - _r(9 * (3 * n * n - 6 * n + 1)))
    return spec, rhs


def _cor12_domain(n: Fraction) -> bool:
    return n != 0 and _thm11_domain(1 / n)


# --- C(4k,2k) with positive argument 1/x^2 --------------------------------------


def thm12_arccot_rhs(x: Expr) -> Expr:
    w = sqrt(4 * x - 1)
    return 8 * x**2 / (4 * x - 1) ** 2 * (3 / w * arccot(w) - 4 * x + 4)


def thm12_R_rhs(x: Expr) -> Expr:
    y = 4 * x + 1
    return 8 * x**2 / y**2 * (3 * R_expr(y, 1) / y - 4 * x - 4)


def _thm12_arccot(x: Fraction):
    spec = TermSpec(4, 2, 1 / (x * x), _coeffs(1 - 2 * x, 2 * (4 * x + 1)))
    return spec, thm12_arccot_rhs(_r(x))


def _thm12_R(x: Fraction):
    spec = TermSpec(4, 2, 1 / (x * x), _coeffs(-2 * x - 1, 2 * (4 * x - 1)))
    return spec, thm12_R_rhs(_r(x))


# --- C(4k,2k) with negative argument 4/(x(1-x)) -------------------------------------


def gen_coeffs(x):
    return -(4 * x**3 - 16 * x**2 + 7 * x + 6), 2 * (2 * x - 1) ** 2 * (2 * x - 3)


def dual_coeffs(x):
    return -(4 * x**3 + 4 * x**2 - 13 * x - 1), 2 * (2 * x - 1) ** 2 * (2 * x + 1)


def thm13_gen_rhs(x: Expr, branch: int | None = None) -> Expr:
    return (1 - x) * (3 * R_expr(x, branch) + 4 * x * (x - 3))


def thm13_dual_rhs(x: Expr, branch: int | None = None) -> Expr:
    b = None if branch is None else -branch
    return -x * (3 * R_expr(1 - x, b) + 4 * (x - 1) * (x + 2))


def _thm13_domain(x: Fraction) -> bool:
    return (2 * x - 1) ** 2 > 2


def _thm13_gen(x: Fraction):
    spec = TermSpec(4, 2, 4 / (x * (1 - x)), _coeffs(*gen_coeffs(x)))
    return spec, thm13_gen_rhs(_r(x))


def _thm13_dual(x: Fraction):
    spec = TermSpec(4, 2, 4 / (x * (1 - x)), _coeffs(*dual_coeffs(x)))
    return spec, thm13_dual_rhs(_r(x))


# --- log n ------------------------------------------------------------------------


def P_poly(n: Fraction) -> Fraction:
    return n**6 - 58 * n**5 + 159 * n**4 + 52 * n**3 + 159 * n**2 - 58 * n + 1


def logn_x(n: Fraction) -> Fraction:
    return (n + 1) ** 2 / (n - 1) ** 2


def _logn_domain(n: Fraction) -> bool:
    return n > 1 and _thm13_domain(logn_x(n))


def _logn(n: Fraction):
    lead = 2 * (n * n + 6 * n + 1) ** 2 * (n * n - 10 * n + 1)
    arg = (n - 1) ** 4 / (-n * (n + 1) ** 2)
    spec = TermSpec(4, 2, arg, _coeffs(P_poly(n), lead))
    rhs = _r(6 * n * (n + 1) * (n - 1) ** 3) * log(_r(n)) - _r(32 * n * (n + 1) ** 2 * (n * n - 4 * n + 1))
    return spec, rhs


FAMILIES: dict[str, Family] = {
    f.name: f
    for f in (
        Family(
            "C2K-LOG",
            "(2n+1)^2 > 2",
            lambda n: n != 0 and n != -1 and (2 * n + 1) ** 2 > 2,
            _c2k_log,
            "C(2k,k) log family in n",
        ),
        Family("THM11-ARCTAN", "-3 < x and 4x^3+27x-27 < 0", _thm11_domain, _thm11_arctan, "C(3k,k) arctan form, k >= 1"),
        Family("THM11-LOG", "-3 < x and 4x^3+27x-27 < 0", _thm11_domain, _thm11_log, "C(3k,k) log form"),
        Family("COR12", "n != 0 and 1/n satisfies the C(3k,k) domain", _cor12_domain, _cor12, "C(3k,k) log form at x = 1/n"),
        Family("THM12-ARCCOT", "x > 1/4", lambda x: x > Fraction(1, 4), _thm12_arccot, "C(4k,2k) arccot form"),
        Family("THM12-R", "x > 1/4", lambda x: x > Fraction(1, 4), _thm12_R, "C(4k,2k) R(4x+1) form"),
        Family("THM13-GEN", "(2x-1)^2 > 2", _thm13_domain, _thm13_gen, "C(4k,2k) R(x) form"),
        Family("THM13-DUAL", "(2x-1)^2 > 2", _thm13_domain, _thm13_dual, "C(4k,2k) R(1-x) form"),
        Family("LOGN", "n > 1 and (2x-1)^2 > 2 at x = (n+1)^2/(n-1)^2", _logn_domain, _logn, "log n family"),
    )
}


def family_instantiate(fam: str, param) -> Identity:
    """The family member at ``param`` as an Identity (exact coefficients)."""
    try:
        F = FAMILIES[fam]
    except KeyError:
        raise ValueError(f"unknown family {fam!r}; known: {', '.join(FAMILIES)}") from None
    p = Fraction(param)
    if not F.in_domain(p):
        raise DomainError(f"{fam}: parameter {p} violates {F.domain_text}")
    spec, rhs = F.build(p)
    return Identity(
        id=f"{fam}@{p}",
        lhs=spec,
        rhs=rhs,
        domain_note=F.domain_text,
        paper_ref=F.source,
        status="pending",
        family=f"{fam}@{p}",
    )


def parse_family_tag(tag: str) -> tuple[str, Fraction]:
    """Split a ``NAME@param`` tag."""
    name, sep, param = tag.partition("@")
    if not sep or name not in FAMILIES:
        raise ValueError(f"bad family tag {tag!r}")
    return name, Fraction(param)


# --- twins ---------------------------------------------------------------------------


def twin_scalar(generated: Identity, printed: Identity) -> Fraction:
    """Rational lambda with printed numerator = lambda * generated numerator.

    Both identities must describe the same series argument and shape.  A start
    index mismatch is allowed; the missing k = 0 term is accounted for in
    :func:`twin_residual`.
    """
    a, b = generated.lhs, printed.lhs
    if (a.m, a.n, a.x, a.e, a.f) != (b.m, b.n, b.x, b.e, b.f):
        raise ValueError(f"{printed.id}: series shape differs from {generated.id}")
    ca, cb = a.num_coeffs, b.num_coeffs
    if len(ca) != len(cb):
        raise ValueError(f"{printed.id}: numerator degree differs from {generated.id}")
    lam = None
    for u, v in zip(ca, cb):
        if u == 0 or v == 0:
            if u != v:
                raise ValueError(f"{printed.id}: numerators are not proportional")
            continue
        r = v / u
        if lam is None:
            lam = r
        elif r != lam:
            raise ValueError(f"{printed.id}: numerators are not proportional")
    if lam is None:
        raise ValueError("zero numerator")
    return lam


def twin_residual(generated: Identity, printed: Identity, digits: int):
    """printed.rhs - lambda * (generated.rhs adjusted to printed's start index)."""
    lam = twin_scalar(generated, printed)
    g = generated.rhs
    ka, kb = generated.lhs.k0, printed.lhs.k0
    if ka != kb:
        if generated.lhs.e or generated.lhs.f:
            raise ValueError("start index shift needs a k = 0 term")
        t0 = RatLit(generated.lhs.p(0))  # x^0 / C(0, 0) = 1
        g = g - t0 if ka < kb else g + t0
    diff = printed.rhs - RatLit(lam) * g
    return lam, eval_expr(diff, digits)

import random
from fractions import Fraction

import pytest

from binomsum.closedform.expr import RatLit, eval_expr, parse_expr
from binomsum.closedform.families import (
    FAMILIES,
    Identity,
    a_n,
    b_n,
    dual_coeffs,
    family_instantiate,
    gen_coeffs,
    parse_family_tag,
    s_poly,
    t_poly,
    twin_residual,
    twin_scalar,
)
from binomsum.closedform.moments import _poly
from binomsum.errors import DomainError
from binomsum.numkernel import const_pi
from binomsum.series import TermSpec, sum_digits

D = 30

SAMPLES = {
    "C2K-LOG": [1, 2, Fraction(1, 2), -2, Fraction(-5, 3), 7],
    "THM11-ARCTAN": [-1, Fraction(-1, 2), Fraction(1, 2), -2, Fraction(-5, 2), Fraction(7, 10)],
    "THM11-LOG": [-1, Fraction(-1, 2), Fraction(1, 2), -2, Fraction(-5, 2), Fraction(7, 10)],
    "COR12": [-1, 2, 3, Fraction(-1, 2), 11, Fraction(7, 3)],
    "THM12-ARCCOT": [1, 2, Fraction(1, 2), Fraction(3, 10), 5],
    "THM12-R": [1, 2, Fraction(1, 2), Fraction(3, 10), 5],
    "THM13-GEN": [2, 3, -1, Fraction(-3, 2), Fraction(5, 2)],
    "THM13-DUAL": [2, 3, -1, Fraction(-3, 2), Fraction(5, 2)],
    "LOGN": [2, 3, Fraction(5, 3), 10, 21, Fraction(85, 4)],
}


@pytest.mark.parametrize("fam,param", [(f, p) for f, ps in SAMPLES.items() for p in ps])
def test_family_matches_series(fam, param):
    ident = family_instantiate(fam, param)
    digits = 12 if (fam, param) == ("LOGN", Fraction(85, 4)) else D
    lhs = sum_digits(ident.lhs, digits)
    rhs = eval_expr(ident.rhs, digits)
    assert abs(lhs.value - rhs.value) <= Fraction(3, 10**digits)


def test_arctan_at_minus_one_is_gosper():
    ident = family_instantiate("THM11-ARCTAN", -1)
    assert ident.lhs == TermSpec(3, 1, Fraction(1, 2), (-3, 25), k0=1)
    v = eval_expr(ident.rhs, D)
    assert abs(v.value - (3 + const_pi(D + 5).value / 2)) <= Fraction(2, 10**D)


def test_logn_two():
    ident = family_instantiate("LOGN", 2)
    printed = Identity("log2", TermSpec(4, 2, Fraction(-1, 18), (-563, 2890)), parse_expr("-12*(log(2)+48)"))
    lam, res = twin_residual(ident, printed, D)
    assert lam == Fraction(-1, 3)
    assert abs(res.value) <= Fraction(1, 10**D)


def test_logn_85_4_denominator():
    ident = family_instantiate("LOGN", Fraction(85, 4))
    assert ident.lhs.x == Fraction(-43046721, 2693140)
    printed = Identity(
        "85/4",
        TermSpec(4, 2, ident.lhs.x, (-517115569199, 661704134402)),
        parse_expr("60520*(1594323*log(85/4)-8374544)"),
    )
    lam, res = twin_residual(ident, printed, D)
    assert lam > 0 and abs(res.value) <= Fraction(1, 10**D)


def test_cor12_scalar_two():
    ident = family_instantiate("COR12", 2)
    assert ident.lhs.num_coeffs == (Fraction(-34), Fraction(1456))
    assert (a_n(Fraction(2)), b_n(Fraction(2))) == (1456, 34)
    printed = Identity("p", TermSpec(3, 1, ident.lhs.x, (-17, 728)), RatLit(Fraction(0)))
    assert twin_scalar(ident, printed) == Fraction(1, 2)


@pytest.mark.parametrize(
    "fam,bad",
    [
        ("THM11-ARCTAN", -3),
        ("THM11-ARCTAN", Fraction(9, 10)),
        ("THM12-R", Fraction(1, 4)),
        ("THM13-GEN", 1),
        ("LOGN", 1),
        ("LOGN", 22),
        ("C2K-LOG", 0),
    ],
)
def test_family_domain_errors(fam, bad):
    with pytest.raises(DomainError):
        family_instantiate(fam, bad)


def test_unknown_family():
    with pytest.raises(ValueError):
        family_instantiate("NOPE", 1)


def test_family_tags():
    assert parse_family_tag("LOGN@85/4") == ("LOGN", Fraction(85, 4))
    with pytest.raises(ValueError):
        parse_family_tag("LOGN")
    assert set(SAMPLES) == set(FAMILIES)


def test_twin_residual_start_shift():
    gen = family_instantiate("THM11-ARCTAN", -1)
    printed = Identity("gosper", TermSpec(3, 1, Fraction(1, 2), (-3, 25)), parse_expr("pi/2"))
    lam, res = twin_residual(gen, printed, 30)
    assert lam == 1 and abs(res.value) <= Fraction(1, 10**30)


def _xs(n):
    rng = random.Random(n)
    return [Fraction(rng.randint(-10**4, 10**4), rng.randint(1, 997)) for _ in range(n)]


@pytest.mark.parametrize("x", _xs(8))
def test_c3_determinant_identity(x):
    X = RatLit(x)
    a1, b1 = (2 * x - 3) ** 2, 2 * x * x + 2 * x - 3
    a2, b2 = _poly(X, [243, -567, 351, 9, -48, 4]), _poly(X, [-81, 243, -189, 69, -48, 2])
    assert a2 == RatLit(s_poly(x)) and b2 == RatLit(t_poly(x))
    assert a1 * t_poly(x) - b1 * s_poly(x) == -4 * x * (2 * x - 3) ** 5


@pytest.mark.parametrize("x", _xs(4))
def test_c42_pos_determinant_identity(x):
    a1, b1 = 2 * (4 * x + 1), 1 - 2 * x
    a2, b2 = 2 * (4 * x - 1), -2 * x - 1
    assert a1 * b2 - b1 * a2 == -24 * x


@pytest.mark.parametrize("x", _xs(7))
def test_c42_neg_determinant_identity(x):
    b1, a1 = gen_coeffs(x)
    b2, a2 = dual_coeffs(x)
    assert a1 * b2 - b1 * a2 == -6 * (2 * x - 1) ** 5

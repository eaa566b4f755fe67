from fractions import Fraction

import mpmath
import pytest

from binomsum.closedform.special import R_func, q_func
from binomsum.errors import DomainError
from binomsum.numkernel import const_pi, elem_eval

from _oracles import close_to_mp

D = 30


def test_q_examples():
    assert q_func(0, D).value == 0
    assert abs(q_func(-2, D).value + const_pi(D + 5).value / 2) <= Fraction(2, 10**D)
    with mpmath.workdps(D + 20):
        assert close_to_mp(q_func(Fraction(-5, 2), D), mpmath.atan(5 / mpmath.sqrt(7)) - mpmath.pi, D)
    # arctan(5/sqrt 7) - pi = -2.05749...; a quoted -2.0577 is off in the fourth place
    assert q_func(Fraction(-5, 2), 10).to_decimal() == "-2.0574912819"


@pytest.mark.parametrize("x", [-3, 1, 2, Fraction(-7, 2)])
def test_q_domain(x):
    with pytest.raises(DomainError):
        q_func(x, 10)


_GRID = [Fraction(-3) + Fraction(4 * i + 2, 102) for i in range(51) if Fraction(-3) + Fraction(4 * i + 2, 102) < 1][:50]


@pytest.mark.parametrize("x", _GRID)
def test_q_addition_law(x):
    with mpmath.workdps(D + 20):
        xm = mpmath.mpf(x.numerator) / x.denominator
        s = mpmath.sqrt((1 - xm) * (3 + xm))
        ref = mpmath.atan((xm - 1) / s) + mpmath.atan((xm + 1) / s)
        assert close_to_mp(q_func(x, D), ref, D - 2)


def test_q_grid_spans_both_branches():
    assert any(x < -2 for x in _GRID) and any(x > -2 for x in _GRID) and len(_GRID) == 50


def test_R_examples():
    with mpmath.workdps(D + 20):
        assert close_to_mp(R_func(-1, D), mpmath.pi / 4, D)
    r9 = R_func(9, D)
    assert abs(r9.value - Fraction(3, 2) * elem_eval("log", 2, D + 5).value) <= Fraction(2, 10**D)
    assert abs(R_func(4, D).value - elem_eval("log", 3, D + 5).value) <= Fraction(2, 10**D)


@pytest.mark.parametrize("x", [2, -2, 4, -4, 9])
@pytest.mark.parametrize("N", [5, 20, 60])
def test_R_series_law(x, N):
    partial = sum(Fraction(1, (2 * k + 1)) * Fraction(1, x) ** k for k in range(N + 1))
    bound = Fraction(1, abs(x)) ** N / (1 - Fraction(1, abs(x)))
    v = R_func(x, 40)
    assert abs(v.value - partial) <= bound + Fraction(1, 10**40)


@pytest.mark.parametrize("y", [0, Fraction(1, 2), 1])
def test_R_domain(y):
    with pytest.raises(DomainError):
        R_func(y, 10)

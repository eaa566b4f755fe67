from fractions import Fraction

import mpmath


def mp_of(q: Fraction, dps: int):
    with mpmath.workdps(dps):
        return mpmath.mpf(q.numerator) / q.denominator


def close_to_mp(v, ref, digits: int, slack: int = 1) -> bool:
    """|v - ref| <= slack * 10^-digits, computed with mpmath at digits + 20."""
    with mpmath.workdps(digits + 20):
        diff = abs(mpmath.mpf(v.value.numerator) / v.value.denominator - ref)
        return diff <= slack * mpmath.mpf(10) ** (-digits)

"""Closed-form expression trees: construction, text grammar, certified evaluation.

Grammar (whitespace insignificant)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' int)?
    base   := '(' expr ')' | fn '(' expr ')' | 'pi' | rational
    rational := int ('/' int)?

A minus sign written directly in front of a rational literal folds into the
literal, so ``-3`` is ``RatLit(-3)`` while ``-(3)`` is ``Neg(RatLit(3))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from ..errors import DivisionByPossiblyZero, ParseError, PrecisionExhausted
from ..numkernel import ELEMENTARY, FixedReal, NeedMorePrecision, apply_fn, const_pi, settle


class Expr:
    """Base node.  Arithmetic operators build folded trees (see ``add`` etc.)."""

    def __add__(self, other):
        return add(self, lift(other))

    def __radd__(self, other):
        return add(lift(other), self)

    def __sub__(self, other):
        return sub(self, lift(other))

    def __rsub__(self, other):
        return sub(lift(other), self)

    def __mul__(self, other):
        return mul(self, lift(other))

    def __rmul__(self, other):
        return mul(lift(other), self)

    def __truediv__(self, other):
        return div(self, lift(other))

    def __rtruediv__(self, other):
        return div(lift(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, k: int):
        return power(self, k)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, eq=True)
class RatLit(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True, eq=True)
class Pi(Expr):
    pass


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True, eq=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class PowInt(Expr):
    base: Expr
    exp: int


@dataclass(frozen=True, eq=True)
class Call(Expr):
    """One of the elementary functions applied to an argument."""

    fn: str
    arg: Expr

    def __post_init__(self):
        if self.fn not in ELEMENTARY:
            raise ValueError(f"unknown function {self.fn!r}")


@dataclass(frozen=True, eq=False)
class Computed(Expr):
    """A real number supplied by a callback ``digits -> FixedReal`` (err <= 1 ulp).

    Used for irrational parameters such as cubic roots; it has no text form.
    """

    label: str
    compute: Callable[[int], FixedReal] = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def at(self, digits: int) -> FixedReal:
        v = self._cache.get(digits)
        if v is None:
            v = self.compute(digits)
            self._cache[digits] = v
        return v


PI = Pi()
ZERO = RatLit(Fraction(0))
ONE = RatLit(Fraction(1))


# ---------------------------------------------------------------------------
# folding constructors


def lift(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, Fraction)):
        return RatLit(Fraction(v))
    raise TypeError(f"cannot lift {type(v).__name__} into an expression")


def is_rat(e: Expr) -> bool:
    return isinstance(e, RatLit)


def add(a: Expr, b: Expr) -> Expr:
    if is_rat(a) and is_rat(b):
        return RatLit(a.value + b.value)
    if is_rat(b) and b.value == 0:
        return a
    if is_rat(a) and a.value == 0:
        return b
    if is_rat(b) and b.value < 0:
        return Sub(a, RatLit(-b.value))
    if isinstance(b, Neg):
        return Sub(a, b.arg)
    if isinstance(b, Mul) and is_rat(b.left) and b.left.value < 0:
        return Sub(a, mul(RatLit(-b.left.value), b.right))
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if is_rat(a) and is_rat(b):
        return RatLit(a.value - b.value)
    if is_rat(b) and b.value == 0:
        return a
    if is_rat(a) and a.value == 0:
        return neg(b)
    if is_rat(b) and b.value < 0:
        return Add(a, RatLit(-b.value))
    if isinstance(b, Neg):
        return add(a, b.arg)
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if is_rat(a) and is_rat(b):
        return RatLit(a.value * b.value)
    if is_rat(a) and a.value == 0 or is_rat(b) and b.value == 0:
        return ZERO
    if is_rat(a) and a.value == 1:
        return b
    if is_rat(b) and b.value == 1:
        return a
    if is_rat(a) and a.value == -1:
        return neg(b)
    if is_rat(b) and b.value == -1:
        return neg(a)
    if is_rat(b):
        a, b = b, a
    if is_rat(a) and isinstance(b, Mul) and is_rat(b.left):
        return mul(RatLit(a.value * b.left.value), b.right)
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if is_rat(b):
        if b.value == 0:
            raise ZeroDivisionError("division by the literal 0")
        if is_rat(a):
            return RatLit(a.value / b.value)
        if b.value == 1:
            return a
    if is_rat(a) and a.value == 0:
        return ZERO
    return Div(a, b)


def neg(a: Expr) -> Expr:
    if is_rat(a):
        return RatLit(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def power(a: Expr, k: int) -> Expr:
    if is_rat(a) and (k >= 0 or a.value != 0):
        return RatLit(a.value**k)
    if k == 1:
        return a
    if k == 0:
        return ONE
    return PowInt(a, k)


def _exact_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def call(fn: str, a: Expr) -> Expr:
    """Function application; perfect-square square roots fold to rationals."""
    if fn == "sqrt" and is_rat(a):
        r = _exact_sqrt(a.value)
        if r is not None:
            return RatLit(r)
    if is_rat(a) and a.value == 0 and fn in ("arctan", "arcsin", "arctanh", "arcsinh", "sqrt"):
        return ZERO
    if fn == "log" and is_rat(a) and a.value == 1:
        return ZERO
    return Call(fn, a)


def sqrt(a) -> Expr:
    return call("sqrt", lift(a))


def log(a) -> Expr:
    return call("log", lift(a))


def arctan(a) -> Expr:
    return call("arctan", lift(a))


def arctanh(a) -> Expr:
    return call("arctanh", lift(a))


def arccot(a) -> Expr:
    return call("arccot", lift(a))


def arcsin(a) -> Expr:
    return call("arcsin", lift(a))


def arcsinh(a) -> Expr:
    return call("arcsinh", lift(a))


# ---------------------------------------------------------------------------
# printing

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3}


def _rat_text(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def _level(e: Expr) -> int:
    if isinstance(e, RatLit) and e.value < 0:
        return 3
    return _PREC.get(type(e), 4)


def to_text(e: Expr) -> str:
    """Render in the expression grammar so that ``parse_expr(to_text(e)) == e``."""
    if isinstance(e, RatLit):
        return _rat_text(e.value) if e.value >= 0 else "-" + _rat_text(-e.value)
    if isinstance(e, Pi):
        return "pi"
    if isinstance(e, Call):
        return f"{e.fn}({to_text(e.arg)})"
    if isinstance(e, Computed):
        raise ValueError(f"computed value {e.label!r} has no text form")
    if isinstance(e, PowInt):
        b = to_text(e.base)
        plain_int = isinstance(e.base, RatLit) and e.base.value >= 0 and e.base.value.denominator == 1
        if not (isinstance(e.base, (Pi, Call)) or plain_int):
            b = f"({b})"
        return f"{b}^{e.exp}"
    if isinstance(e, Neg):
        inner = to_text(e.arg)
        if _level(e.arg) < 3 or isinstance(e.arg, RatLit):
            inner = f"({inner})"
        return "-" + inner
    lvl = _PREC[type(e)]
    op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(e)]
    left = to_text(e.left)
    if _level(e.left) < lvl:
        left = f"({left})"
    right = to_text(e.right)
    frac_lit = isinstance(e.right, RatLit) and e.right.value.denominator != 1
    if _level(e.right) <= lvl or (isinstance(e, Div) and frac_lit):
        right = f"({right})"
    return f"{left}{op}{right}"


# ---------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, src: str):
        self.toks: list[tuple[str, str, int]] = []
        i = 0
        while i < len(src):
            c = src[i]
            if c.isspace():
                i += 1
            elif c.isdigit():
                j = i
                while j < len(src) and src[j].isdigit():
                    j += 1
                self.toks.append(("int", src[i:j], i))
                i = j
            elif c.isalpha() or c == "_":
                j = i
                while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                    j += 1
                self.toks.append(("name", src[i:j], i))
                i = j
            elif c in "+-*/^()":
                self.toks.append((c, c, i))
                i += 1
            else:
                raise ParseError(f"unexpected character {c!r}", i)
        self.toks.append(("eof", "", len(src)))
        self.pos = 0

    def peek(self, ahead: int = 0) -> tuple[str, str, int]:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def take(self) -> tuple[str, str, int]:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str) -> tuple[str, str, int]:
        t = self.peek()
        if t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {t[1] or 'end of input'!r}", t[2], {kind})
        return self.take()

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "eof":
            op = self.take()[0]
            r = self.term()
            e = Add(e, r) if op == "+" else Sub(e, r)
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            r = self.factor()
            e = Mul(e, r) if op == "*" else Div(e, r)
        return e

    def factor(self) -> Expr:
        if self.peek()[0] == "-":
            self.take()
            if self.peek()[0] == "int" and not self._literal_has_power():
                lit = self.rational()
                return RatLit(-lit.value)
            return Neg(self.factor())
        b = self.base()
        if self.peek()[0] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "-":
                self.take()
                sign = -1
            t = self.expect("int")
            return PowInt(b, sign * int(t[1]))
        return b

    def _literal_has_power(self) -> bool:
        # "-2^2" is -(2^2), "-2/3^2" is -((2/3)^2)
        k = 1
        if self.peek(k)[0] == "/" and self.peek(k + 1)[0] == "int":
            k += 2
        return self.peek(k)[0] == "^"

    def rational(self) -> RatLit:
        t = self.expect("int")
        num = int(t[1])
        if self.peek()[0] == "/" and self.peek(1)[0] == "int":
            self.take()
            d = self.take()
            den = int(d[1])
            if den == 0:
                raise ParseError("zero denominator in rational literal", d[2])
            return RatLit(Fraction(num, den))
        return RatLit(Fraction(num))

    def base(self) -> Expr:
        t = self.peek()
        if t[0] == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if t[0] == "int":
            return self.rational()
        if t[0] == "name":
            self.take()
            if t[1] == "pi":
                return PI
            if t[1] in ELEMENTARY:
                self.expect("(")
                e = self.expr()
                self.expect(")")
                return Call(t[1], e)
            raise ParseError(f"unknown name {t[1]!r}", t[2], set(ELEMENTARY) | {"pi"})
        raise ParseError(
            f"unexpected {t[1] or 'end of input'!r}",
            t[2],
            {"(", "int", "pi", "-"} | set(ELEMENTARY),
        )


def parse_expr(src: str) -> Expr:
    if not src or not src.strip():
        raise ParseError("empty expression", 0, {"(", "int", "pi", "-"})
    p = _Parser(src)
    e = p.expr()
    t = p.peek()
    if t[0] != "eof":
        raise ParseError(f"trailing input {t[1]!r}", t[2], {"+", "-", "*", "/", "eof"})
    return e


# ---------------------------------------------------------------------------
# evaluation


def node_count(e: Expr) -> int:
    if isinstance(e, (RatLit, Pi, Computed)):
        return 1
    if isinstance(e, (Neg, Call)):
        return 1 + node_count(e.arg)
    if isinstance(e, PowInt):
        return 1 + node_count(e.base) + 2 * abs(e.exp).bit_length()
    return 1 + node_count(e.left) + node_count(e.right)


def _ev(e: Expr, W: int) -> FixedReal:
    if isinstance(e, RatLit):
        return FixedReal.exact(e.value, W)
    if isinstance(e, Pi):
        return const_pi(W)
    if isinstance(e, Computed):
        return e.at(W)
    if isinstance(e, Neg):
        return -_ev(e.arg, W)
    if isinstance(e, Add):
        return _ev(e.left, W) + _ev(e.right, W)
    if isinstance(e, Sub):
        return _ev(e.left, W) - _ev(e.right, W)
    if isinstance(e, Mul):
        if isinstance(e.left, RatLit) and e.left.value.denominator == 1:
            return _ev(e.right, W) * int(e.left.value)
        return _ev(e.left, W) * _ev(e.right, W)
    if isinstance(e, Div):
        den = _ev(e.right, W)
        if den.sign() is None:
            raise NeedMorePrecision("divisor not yet separated from zero")
        if den.sign() == 0:
            raise DivisionByPossiblyZero("division by an exact zero")
        return _ev(e.left, W) / den
    if isinstance(e, PowInt):
        b = _ev(e.base, W)
        if e.exp < 0:
            if b.sign() is None:
                raise NeedMorePrecision("base of a negative power not separated from zero")
            if b.sign() == 0:
                raise DivisionByPossiblyZero("zero to a negative power")
        return b**e.exp
    if isinstance(e, Call):
        return apply_fn(e.fn, _ev(e.arg, W))
    raise TypeError(f"not an expression node: {e!r}")


def eval_expr(e: Expr, digits: int) -> FixedReal:
    """Value of ``e`` with absolute error <= 10**-digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    guard = 10 + math.ceil(math.log10(node_count(e) + 1))
    return settle(lambda W: _ev(e, W), digits, guard=guard)


def certified_sign(e: Expr, start_digits: int = 20, max_digits: int = 2000) -> int:
    """Sign of the value of ``e``; rational nodes are decided exactly."""
    if isinstance(e, RatLit):
        return (e.value > 0) - (e.value < 0)
    d = start_digits
    while d <= max_digits:
        try:
            s = _ev(e, d).sign()
        except NeedMorePrecision:
            s = None
        if s is not None:
            return s
        d *= 2
    raise PrecisionExhausted("could not separate value from zero")


@lru_cache(maxsize=4096)
def _eval_text(src: str, digits: int) -> FixedReal:
    return eval_expr(parse_expr(src), digits)

"""Exception hierarchy shared by all binomsum modules."""


class BinomSumError(Exception):
    """Base class for library errors."""


class DomainError(BinomSumError, ValueError):
    """An argument lies outside the real domain of a function or family."""


class DivisionByPossiblyZero(BinomSumError, ZeroDivisionError):
    """The certified interval of a divisor contains zero."""


class PrecisionExhausted(BinomSumError, ArithmeticError):
    """Raising the working precision did not settle a sign or an error budget."""


class SpecError(BinomSumError, ValueError):
    """A series description violates its structural invariants."""


class ConvergenceError(SpecError):
    """The series argument lies on or beyond the radius of convergence."""


class RatioNotCapped(BinomSumError, ArithmeticError):
    """No certified geometric ratio below one exists at the requested cut-off."""


class UnknownTelescope(BinomSumError, KeyError):
    """Telescope identifier not present in the registry."""


class IllConditioned(BinomSumError, ArithmeticError):
    """A linear solve hit a determinant whose interval contains zero."""


class SchemaError(BinomSumError, ValueError):
    """A catalog record is malformed."""

    def __init__(self, message: str, entry_id: str | None = None, field: str | None = None):
        self.entry_id = entry_id
        self.field = field
        where = ""
        if entry_id is not None:
            where = f"[{entry_id}]"
            if field is not None:
                where += f".{field}"
            where += " "
        super().__init__(where + message)


class ToleranceNotReached(BinomSumError, ArithmeticError):
    """Adaptive quadrature ran out of subintervals before meeting its tolerance."""


class ParseError(BinomSumError, ValueError):
    """Malformed closed-form expression text."""

    def __init__(self, message: str, offset: int, expected: frozenset[str] | set[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        exp = ""
        if self.expected:
            exp = " (expected one of: " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(f"{message} at offset {offset}{exp}")

"""Exception hierarchy shared by every module of the package."""


class TamePairsError(Exception):
    """Base class for all errors raised by tamepairs."""


class DivisionByZero(TamePairsError, ZeroDivisionError):
    pass


class FieldMismatch(TamePairsError, TypeError):
    pass


class ContextMismatch(TamePairsError, TypeError):
    pass


class DimensionMismatch(TamePairsError, ValueError):
    pass


class ZeroElement(TamePairsError, ValueError):
    """An operation that needs a nonzero element received zero."""


class NonDivisibleSubgroup(TamePairsError, ValueError):
    pass


class NonPositive(TamePairsError, ValueError):
    pass


class NotInValuationRing(TamePairsError, ValueError):
    pass


class InsufficientPrecision(TamePairsError, ArithmeticError):
    """A comparison would depend on terms outside the guaranteed window."""


class WindowError(TamePairsError, ValueError):
    """An operation needs exponents outside the finite coordinate window."""


class UnsupportedMorphism(TamePairsError, ValueError):
    pass


class BudgetExhausted(TamePairsError, RuntimeError):
    """Rejection sampling ran past its retry bound."""


class InconsistentVerdict(TamePairsError, AssertionError):
    """A structural decision disagreed with its sampling cross-check."""


class ParseError(TamePairsError, ValueError):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        self.column = pos + 1
        super().__init__(f"{message} (column {self.column} in {text!r})" if text else message)


class NotOrderPreserving(UnsupportedMorphism):
    """A matrix offered as an o-group morphism reverses some positive element."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)

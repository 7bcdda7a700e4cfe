"""Exception types raised across the package."""


class NGMPError(Exception):
    """Base class for every error raised by :mod:`ngmp`."""


class DegenerateParameter(NGMPError, ValueError):
    """A shape constant makes the ratio q = D/C undefined or zero."""


class SingularRadius(NGMPError, ValueError):
    """Evaluation hit (or a grid crossed) a pole of 1/(C + D e^(-alpha r))."""


class NoRealBoundState(NGMPError, ValueError):
    """The closed-form level requires the square root of a negative number."""

    def __init__(self, message: str, discriminant: float):
        super().__init__(message)
        self.discriminant = discriminant


class DivisionByZero(NGMPError, ZeroDivisionError):
    pass


class InvalidExponent(NGMPError, ValueError):
    pass


class TailNotConverged(NGMPError, RuntimeError):
    """|R(r_max)|^2 is not negligible compared with max |R|^2."""


class NonNormalizable(NGMPError, RuntimeError):
    pass


class ParseError(NGMPError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(NGMPError, ValueError):
    pass

"""Exception hierarchy shared by all modules."""


class HopfDualError(Exception):
    pass


class DescriptorMismatch(HopfDualError):
    pass


class NotDivisible(HopfDualError):
    pass


class ZeroDivisorError(HopfDualError):
    pass


class PrecisionExhausted(HopfDualError):
    pass


class WindowExceeded(HopfDualError):
    """A computation needed data beyond the materialized basis window."""


class SupportExceeded(HopfDualError):
    """A module action does not vanish on dual basis elements past the bound."""


class FiltrationViolation(HopfDualError):
    pass


class DegreeOverflow(HopfDualError):
    pass


class UnsupportedRing(HopfDualError):
    pass


class ParseError(HopfDualError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IndexOutOfWindow(ParseError):
    pass


class ConsistencyError(HopfDualError):
    """Two independent routes to the same value disagreed."""

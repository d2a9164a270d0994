"""Exception hierarchy shared by every module."""


class SyndeticaError(Exception):
    pass


class WindowError(SyndeticaError, ValueError):
    """Malformed window bounds or mismatched windows in a binary operation."""


class OutOfWindowError(WindowError, IndexError):
    """A membership or symbol query fell outside the known interval."""


class ArithmeticOverflowError(SyndeticaError, ArithmeticError):
    """A polynomial value left the signed 64-bit range."""


class CoverageError(WindowError):
    """The base data does not cover every index a computation needs.

    ``offending`` lists the (n, i) pairs (or other keys) that fell outside.
    """

    def __init__(self, message, offending=()):
        super().__init__(message)
        self.offending = list(offending)


class InconclusiveError(SyndeticaError):
    """The window margin is too small to give an honest verdict.

    ``required`` optionally carries the window size that would suffice.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class PolynomialError(SyndeticaError, ValueError):
    pass

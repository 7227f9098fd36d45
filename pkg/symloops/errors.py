"""
symloops error types
Every domain failure raised by the library derives from SymloopsError
"""


class SymloopsError(Exception):
    """Base class for domain errors (CLI exit code 2)"""


class InputFormatError(ValueError):
    """Malformed input: bad JSON, bad descriptor, bad flag value (CLI exit code 1)"""


class RingMismatchError(SymloopsError):
    pass


class NotInvertibleError(SymloopsError):
    pass


class DivisionByZeroError(SymloopsError):
    pass


class DeterminantError(SymloopsError):
    pass


class SizeMismatchError(SymloopsError):
    pass


class RootError(SymloopsError):
    pass


class UnsupportedRingError(SymloopsError):
    pass


class PreconditionError(SymloopsError):
    pass


class NotInSymbolFormError(SymloopsError):
    pass


class OrderBoundExceededError(SymloopsError):
    """Group enumeration passed the order bound"""

    def __init__(self, bound, partial_count):
        super().__init__(
            f"order bound exceeded: more than {bound} elements "
            f"(enumerated {partial_count} before aborting)"
        )
        self.bound = bound
        self.partial_count = partial_count


class SmithFormConsistencyError(SymloopsError):
    pass

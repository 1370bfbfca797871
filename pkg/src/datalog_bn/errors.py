"""Exception types shared across the package."""


class DatalogBNError(Exception):
    pass


class ParseError(DatalogBNError):
    """Syntax or well-formedness error in a program text.

    ``line`` and ``column`` are 1-based; either may be ``None`` when the
    error is not tied to a single position (an arity conflict, say).
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)


class GroundingError(DatalogBNError):
    pass


class UnsafeRuleWarning(UserWarning):
    pass


class CapExceeded(DatalogBNError):
    """An exhaustive scan or enumeration would exceed its configured cap."""

    def __init__(self, what, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: {size} exceeds cap {cap}")


class BipartitionError(DatalogBNError):
    pass


# Default caps: 2^n scans, 3^n scans, per-function dependency count, cycles.
MAX_ATOMS_2V = 20
MAX_ATOMS_3V = 13
MAX_DEPENDENCIES = 20
MAX_CYCLES = 10**6


def check_cap(what, size, cap):
    if size > cap:
        raise CapExceeded(what, size, cap)

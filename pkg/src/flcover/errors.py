"""Exception hierarchy shared by every module."""


class FLCError(Exception):
    """Base class for all errors raised by flcover."""


class OrderError(FLCError):
    """An order relation is not what the caller claimed (e.g. not a lattice)."""


class ComplexityBound(FLCError):
    """An exhaustive check would exceed the desk-scale limits."""


class PreconditionError(FLCError):
    """An operation was called on an input that fails its stated precondition."""


class ResidualMissing(FLCError):
    def __init__(self, side, b, c):
        self.side, self.b, self.c = side, b, c
        super().__init__(f"no {side} residual for ({b}, {c})")


class VariantMismatch(FLCError):
    def __init__(self, element, values):
        self.element, self.values = element, values
        super().__init__(f"negation variants disagree at {element}: {values}")


class FormatError(FLCError):
    """Malformed input document."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ParseError(FLCError):
    def __init__(self, message, pos):
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


class UnknownSymbol(FLCError):
    pass


class ArityError(FLCError):
    pass


class FreeVariable(FLCError):
    pass


class StructureError(FLCError):
    """A document parsed, but its relations do not form the structure the block claims."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)

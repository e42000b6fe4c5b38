"""Exception types raised by the package."""


class LieYamagutiError(Exception):
    """Base class for every error raised here."""


class StructureError(LieYamagutiError):
    """Structure constants are malformed (wrong shape, not skew, bad entries)."""


class DimensionMismatch(LieYamagutiError):
    """Operands live on spaces of different dimensions."""


class NotAssociative(LieYamagutiError):
    pass


class NotNijenhuis(LieYamagutiError):
    pass


class NotMaurerCartan(LieYamagutiError):
    pass


class NotRotaBaxter(LieYamagutiError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotVerifiedDeformation(LieYamagutiError):
    """An order-n deformation was required but the coefficient identities fail."""


class ResourceCapExceeded(LieYamagutiError):
    """A computation would allocate more tensor entries than the configured cap."""


class InternalConsistencyError(LieYamagutiError):
    """Two independent computations of the same quantity disagree."""


class ParseError(LieYamagutiError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)

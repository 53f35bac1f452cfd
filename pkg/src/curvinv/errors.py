"""Exception hierarchy shared across the package."""


class CurvinvError(Exception):
    """Base class for all engine errors."""


class UndecidedZeroError(CurvinvError):
    """A zero test left the decidable expression class.

    Raised instead of silently answering "nonzero" when the canonical form is
    not the zero polynomial but the atoms involved cannot be certified
    algebraically independent (e.g. rationally dependent trig arguments).
    """


class UnknownCoordinateError(CurvinvError):
    """Differentiation with respect to a symbol that is not a coordinate."""


class SubstitutionError(CurvinvError):
    """Ill-formed substitution request."""


class UnboundSymbolError(CurvinvError):
    """Numeric evaluation requested with unbound symbols (listed in args)."""

    def __init__(self, symbols):
        self.symbols = sorted(symbols)
        super().__init__("unbound symbols in numeric evaluation: "
                         + ", ".join(self.symbols))


class PreconditionError(CurvinvError):
    """A mathematical precondition failed (CLI exit code 3)."""


class DegenerateMetricError(PreconditionError):
    """Metric determinant is exactly zero."""


class DimensionError(PreconditionError):
    """Operation undefined in this dimension."""


class SignatureMismatchError(PreconditionError):
    """Operands declare incompatible signatures."""


class ChartMismatchError(CurvinvError):
    """Operands live on different charts."""


class SlotError(CurvinvError):
    """Bad tensor slot index or slot variance."""


class KundtConstraintError(PreconditionError):
    """The Kundt determinant constraint d/dv det(gamma) = 0 is violated."""


class ParseError(CurvinvError):
    """Syntax or validation error in user input (CLI exit code 2)."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + loc)

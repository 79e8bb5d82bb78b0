"""Exception classes shared across the package."""


class QCousinError(Exception):
    """Base class for all errors raised by qcousin."""


class ConfigurationError(QCousinError, ValueError):
    """Objects from incompatible settings were combined (fields, algebras, pieces)."""


class FieldArithmeticError(QCousinError, ZeroDivisionError):
    """Inversion of zero in a ground field."""


class ValidationError(QCousinError, ValueError):
    """A constructed object failed a structural check (degree, relation compatibility, exactness)."""


class InclusionError(ValidationError):
    """A quotient of section spaces was requested but the smaller space is not contained in the larger.

    ``witness`` holds the coordinates (in the degree-zero basis) of a vector violating the inclusion.
    """

    def __init__(self, message, witness=None, witness_text=None):
        super().__init__(message)
        self.witness = witness
        self.witness_text = witness_text


class ParseError(QCousinError, ValueError):
    """Text input could not be parsed; carries a 1-based line and column when known."""

    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        loc = []
        if path:
            loc.append(path)
        if line is not None:
            loc.append(f"line {line}")
        if column is not None:
            loc.append(f"column {column}")
        prefix = f"{', '.join(loc)}: " if loc else ""
        super().__init__(prefix + message)
        self.bare_message = message


class UnsupportedError(ConfigurationError):
    """A request outside the supported scope, such as the commutative oracle at q != 1."""

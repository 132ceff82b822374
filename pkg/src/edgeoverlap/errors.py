"""Exception types shared across the package.

Every error carries a short stable ``code`` so the CLI can emit
machine-parsable ``error: <code>: <message>`` lines.
"""


class EdgeOverlapError(Exception):
    """Base class for all library errors."""

    code = "error"


class ParseError(EdgeOverlapError):
    """Malformed input data; carries the 1-based line number when known."""

    code = "parse"

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class EmptyInputError(EdgeOverlapError):
    """Input contained no data rows at all."""

    code = "empty-input"


class ConfigError(EdgeOverlapError):
    """Invalid option combination or unknown configuration name."""

    code = "config"


class DomainError(EdgeOverlapError):
    """A closed-form approximation was evaluated outside its valid domain."""

    code = "domain"


class ZeroDensityError(DomainError):
    """The graph has no edges, so the null-model density is undefined."""

    code = "zero-density"

"""Shared exception types.

Every error carries a stable machine-readable ``code`` so the HTTP layer
can map exceptions to API error payloads without string matching.
"""


class TaxoTraceError(Exception):
    code = "internal"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InvalidArgumentError(TaxoTraceError):
    code = "invalid-argument"


class NotFoundError(TaxoTraceError):
    code = "not-found"


class ConflictError(TaxoTraceError):
    code = "conflict"


class EncodingError(TaxoTraceError):
    """Input bytes are not valid UTF-8; ``offset`` is the first bad byte."""

    code = "encoding"

    def __init__(self, message: str, offset: int):
        super().__init__(message)
        self.offset = offset


class FormatError(TaxoTraceError):
    """Structurally malformed input (e.g. a CSV header missing a column)."""

    code = "format"


class TurtleParseError(TaxoTraceError):
    """Syntactically invalid Turtle; ``line`` is 1-based."""

    code = "turtle-parse"

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SchemaError(TaxoTraceError):
    code = "schema"


class LinkImportError(TaxoTraceError):
    """All-or-nothing link import failure; ``issues`` is a list of
    (line_number, message) pairs."""

    code = "link-import"

    def __init__(self, issues: list[tuple[int, str]]):
        msg = "; ".join(f"line {n}: {m}" for n, m in issues)
        super().__init__(msg or "import failed")
        self.issues = issues

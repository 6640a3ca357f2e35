"""Exception hierarchy shared by the library, the CLI and the HTTP service.

Every error carries a stable machine ``code`` so the service can map it to
exactly one API error code.
"""


class PatternPilotError(Exception):
    code = "INTERNAL"

    def __init__(self, message, *, line=None, field=None, case_id=None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.field = field
        self.case_id = case_id

    def locus(self):
        out = {}
        if self.line is not None:
            out["line"] = self.line
        if self.field is not None:
            out["field"] = self.field
        if self.case_id is not None:
            out["case_id"] = self.case_id
        return out


class ParseError(PatternPilotError):
    """Malformed input that is not even valid JSON."""

    code = "PARSE"


class SchemaError(PatternPilotError):
    """Structurally valid input with missing or ill-typed fields."""

    code = "SCHEMA"


class IntegrityError(PatternPilotError):
    """Duplicate (case_id, seq) key."""

    code = "DUPLICATE_EVENT"


class OrderingError(PatternPilotError):
    """Event violates the per-case total order or context homogeneity."""

    code = "ORDERING"


class DomainError(PatternPilotError):
    """Operation precondition violated (empty trace, guard exceeded, ...)."""

    code = "DOMAIN"


class NotFoundError(PatternPilotError):
    code = "NOT_FOUND"


class VersionError(PatternPilotError):
    """Persisted artifact carries an unsupported schema version."""

    code = "VERSION"


class BusyError(PatternPilotError):
    """A long-running exclusive job (mining) is already in progress."""

    code = "BUSY"

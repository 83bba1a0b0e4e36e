"""Exception hierarchy.

The CLI maps these onto exit codes: validation errors give 1,
precondition errors give 2 and internal inconsistencies give 3.
"""


class TauRegError(Exception):
    """Base class for all errors raised by the package."""


class ValidationError(TauRegError):
    """Malformed input: bad files, bad presentations, bad modules."""


class ParseError(ValidationError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class InvalidPresentation(ValidationError):
    pass


class NotFiniteDimensional(InvalidPresentation):
    pass


class NotAdmissible(InvalidPresentation):
    pass


class NonHomogeneousRelation(InvalidPresentation):
    pass


class RelationViolation(ValidationError):
    """A representation does not satisfy one of the defining relations."""

    def __init__(self, relation, message=None):
        self.relation = relation
        super().__init__(message or f"relation violated: {relation}")


class PreconditionError(TauRegError):
    """The input is valid but the requested procedure does not apply."""


class NotTriangular(PreconditionError):
    pass


class NotGentle(PreconditionError):
    pass


class NotNakayama(PreconditionError):
    pass


class NotSimpleProjective(PreconditionError):
    pass


class SimpleNotInSupport(PreconditionError):
    pass


class InternalInconsistency(TauRegError):
    """Two routes that must agree did not."""

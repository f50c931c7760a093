"""Exception hierarchy shared by every module of the package."""


class LieTripleError(Exception):
    """Base class for all errors raised by lietriple."""


class InputError(LieTripleError):
    """Malformed or inconsistent input (maps to CLI exit code 2)."""


class FieldMismatchError(InputError):
    pass


class DimensionError(InputError):
    pass


class UnsupportedLevelError(InputError):
    pass


class ParseError(InputError):
    """Raised while reading a file; ``context`` names the offending field or line."""

    def __init__(self, message, context=None):
        self.context = context
        if context:
            message = f"{context}: {message}"
        super().__init__(message)


class IndexOutOfRangeError(ParseError):
    pass


class BadScalarError(ParseError):
    pass


class MathematicalError(LieTripleError):
    """An input is well formed but fails a mathematical precondition (exit code 1)."""


class NotASubspaceError(MathematicalError):
    pass


class NotALieTripleSystemError(MathematicalError):
    def __init__(self, message, violations=()):
        self.violations = list(violations)
        super().__init__(message)


class NotALieAlgebraError(MathematicalError):
    def __init__(self, message, violations=()):
        self.violations = list(violations)
        super().__init__(message)


class NotARepresentationError(MathematicalError):
    pass


class NotACocycleError(MathematicalError):
    pass


class NotNijenhuisError(MathematicalError):
    pass


class ConstantTermError(InputError):
    pass


class NotASectionError(MathematicalError):
    pass


class ExtensionError(MathematicalError):
    pass


class BracketEscapesIdealError(ExtensionError):
    pass


class InvalidWitnessError(MathematicalError):
    pass

"""Exception hierarchy shared by the library and the command line."""


class SfrelError(Exception):
    """Base class for every error raised by sfrel."""


class AlphabetError(SfrelError):
    """A symbol is not declared, or an alphabet declaration is malformed."""


class CarrierMismatchError(SfrelError):
    """Two occurrences live in different carrier words."""


class RelationError(SfrelError):
    """A relation is an identity pair or is duplicated."""


class ClassificationError(SfrelError):
    """An operation was called on a system of the wrong block shape."""


class AnalysisStateError(SfrelError):
    """An operation needs a proper two-block closure analysis."""


class InvalidCertificateError(SfrelError):
    """A linear decomposition fails verification."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class PreconditionError(SfrelError):
    """An operation's documented precondition does not hold."""


class IndeterminateError(SfrelError):
    """A budgeted search ran out before it could confirm an equality."""


class NotSquareFreeRelativeError(PreconditionError):
    """The word is not square-free relative to the system (or could not be shown to be)."""


class InvariantViolation(SfrelError):
    """An internal invariant that the theory guarantees was observed to fail."""


class FormatError(SfrelError):
    """A system file, certificate file or serialized object could not be parsed."""

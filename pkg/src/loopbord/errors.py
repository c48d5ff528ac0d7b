"""Exception hierarchy.

Every error raised for a violated mathematical precondition derives from
``DomainError``; the CLI maps these to exit code 1.  Malformed input
documents raise ``SchemaError`` (exit code 2).
"""


class DomainError(Exception):
    """A precondition on the mathematical input was violated."""


class SchemaError(Exception):
    """An input document does not match the expected JSON shape."""


class NotGCM(DomainError):
    pass


class UnsupportedType(DomainError):
    pass


class DatumMismatch(DomainError):
    pass


class IndexOutOfRange(DomainError):
    pass


class LengthCapExceeded(DomainError):
    pass


class OrientationError(DomainError):
    pass


class NestingError(DomainError):
    pass


class NotARoot(DomainError):
    pass


class FullSetError(DomainError):
    pass


class MalformedSpec(DomainError):
    pass


class EmptySupport(DomainError):
    pass


class NotDominant(DomainError):
    pass


class ChainLeavesSupport(DomainError):
    pass


class EmptyWindow(DomainError):
    pass


class NotUnipotentShape(DomainError):
    pass


class OrderMismatch(DomainError):
    pass


class NonTermination(DomainError):
    pass


class WrongParabolic(DomainError):
    pass


class UndecidableLevi(DomainError):
    pass


class UndecidableCell(DomainError):
    pass


class EmptyCandidates(DomainError):
    pass


class UnknownSuite(SchemaError):
    pass

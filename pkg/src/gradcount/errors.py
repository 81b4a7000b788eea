"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class GradCountError(Exception):
    """Base class for all library errors."""


class GroupParseError(GradCountError, ValueError):
    """Malformed group specification string."""


class CayleyTableError(GradCountError, ValueError):
    """A Cayley table failed verification (not a group, or unreadable)."""


class DomainError(GradCountError, ValueError):
    """An operation was called outside its precondition."""


class BoundExceeded(DomainError):
    """A brute-force enumeration would exceed its configured size cap."""


class IntegralityError(GradCountError, ArithmeticError):
    """A Burnside sum was not divisible by the group order.

    This can only happen through an implementation bug.
    """


class InconsistentSequenceError(GradCountError, ValueError):
    """A count sequence does not come from any finite group."""


class InsufficientTermsError(InconsistentSequenceError):
    """The count sequence is too short to determine the order profile."""

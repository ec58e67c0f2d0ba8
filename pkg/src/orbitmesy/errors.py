"""Exception types raised across the package."""


class OrbitmesyError(Exception):
    """Base class for all package errors."""


# poset construction and interrogation
class CycleError(OrbitmesyError, ValueError):
    pass


class NotIrreducibleError(OrbitmesyError, ValueError):
    pass


class NotSelfDualError(OrbitmesyError, ValueError):
    pass


class NotAnIdealError(OrbitmesyError, ValueError):
    pass


# labelings
class InvariantError(OrbitmesyError, ValueError):
    """A labeling violates a cover relation or the label bound."""


class NotAFenceError(OrbitmesyError, ValueError):
    pass


class WrongPosetError(OrbitmesyError, ValueError):
    pass


class ArityMismatchError(OrbitmesyError, ValueError):
    """Number of ones in a content word differs from the packed label count."""


class ArityError(OrbitmesyError, ValueError):
    """A content word does not have the number of ones an operation needs."""


# dynamics
class NonReturnError(OrbitmesyError, RuntimeError):
    pass


class ClosureError(OrbitmesyError, ValueError):
    pass


# statistics
class TypeMismatchError(OrbitmesyError, TypeError):
    pass


class EmptySetError(OrbitmesyError, ValueError):
    pass


class NotHomomesicError(OrbitmesyError, ValueError):
    pass


class SymmetryError(OrbitmesyError, ValueError):
    """The content word has rotational symmetry; ``value`` holds the symmetric-branch sum."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class CounterexampleError(OrbitmesyError, AssertionError):
    """A proven implication failed on concrete data. Indicates a bug."""


# cli
class ParseError(OrbitmesyError, ValueError):
    pass

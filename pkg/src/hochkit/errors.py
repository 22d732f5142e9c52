"""Exception hierarchy.

Domain errors derive from :class:`HochkitError`; the command line maps them to
exit status 1.  Malformed DSL input raises :class:`DslError` (exit status 2).
"""


class HochkitError(Exception):
    """Base class for mathematical/domain failures."""


class ContextMismatchError(HochkitError, ValueError):
    """Objects built over different numbers of variables were combined."""


class ArityError(HochkitError, ValueError):
    pass


class IndexRangeError(HochkitError, IndexError):
    pass


class OrderUndefinedError(HochkitError, ValueError):
    """The zero operator has no order."""


class DecompositionError(HochkitError, ValueError):
    pass


class NotACocycleError(HochkitError):
    pass


class NoSolutionInWindowError(HochkitError):
    def __init__(self, message, window=None):
        super().__init__(message)
        self.window = window


class WindowOverflowError(RuntimeError):
    """A differential left its declared codomain window (an internal bug)."""


class DslError(ValueError):
    """Syntax or semantic error in operator/polynomial text.

    Carries a 1-based ``line``/``col`` and the set of tokens that would have
    been accepted at that point (possibly empty for semantic errors).
    """

    def __init__(self, message, line=1, col=1, expected=()):
        self.line = line
        self.col = col
        self.expected = frozenset(expected)
        self.bare_message = message
        where = f"line {line}, column {col}"
        if self.expected:
            exp = ", ".join(sorted(self.expected))
            super().__init__(f"{where}: {message} (expected one of: {exp})")
        else:
            super().__init__(f"{where}: {message}")


class WindowMembershipError(HochkitError, ValueError):
    """An operator does not lie in the truncation window it was paired with."""

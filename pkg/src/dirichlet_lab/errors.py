"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI: DomainError -> 2, HorizonError -> 3,
InvariantViolation -> 4.
"""


class DirichletLabError(Exception):
    """Base class for all library errors."""


class DomainError(DirichletLabError):
    """Input outside an operation's stated precondition."""


class HorizonError(DirichletLabError):
    """A finite horizon (table length, digit cap, bracket depth) was exhausted
    before the requested verdict could be certified."""


class InvariantViolation(DirichletLabError):
    """An internally checked theorem bound failed.

    This signals a bug in the implementation, never a mathematical outcome;
    reports carry enough evidence to reproduce the failing scan.
    """

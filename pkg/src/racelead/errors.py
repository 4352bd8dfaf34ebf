"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class RaceLeadError(Exception):
    """Base class for all package errors."""


class DomainError(RaceLeadError, ValueError):
    """An argument violates an operation's precondition."""


class ResourceLimitError(RaceLeadError):
    """An enumeration would exceed its configured cap."""


class TieError(DomainError):
    """Two quantities the continuous model treats as distinct compare equal."""


class VerificationError(RaceLeadError, AssertionError):
    """An internal runtime check of a proved property failed."""

"""Exception classes shared by the library and the CLI."""


class PesectError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(PesectError, ValueError):
    """Bad arguments: mismatched lengths, out-of-range ranks, unknown options."""


class ValidationError(PesectError, ValueError):
    """Input data that does not describe a valid object (e.g. a non-bijective table)."""


class GuardError(PesectError, RuntimeError):
    """A computation was refused because it exceeds a configured size bound."""

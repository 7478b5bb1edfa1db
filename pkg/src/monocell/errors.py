class MonocellError(Exception):
    """Base class for library errors."""


class InputError(MonocellError):
    """Malformed or invalid input data."""


class PreconditionError(MonocellError):
    """An operation's hypothesis does not hold for the given input."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedInput(MonocellError):
    """Input exceeds a configured size or dimension cap."""


class PostconditionError(MonocellError):
    """A result failed its own consistency check. Indicates a bug or a theorem failure."""


class OracleDisagreement(MonocellError):
    """Two independent decision routes returned different verdicts."""

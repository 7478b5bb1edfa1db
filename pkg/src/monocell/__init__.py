"""Exact PL decision procedures for semi-monotone sets and monotone maps."""
from .errors import (
    MonocellError, InputError, PreconditionError, UnsupportedInput,
    PostconditionError, OracleDisagreement,
)

__version__ = "0.1.0"
__all__ = ["MonocellError", "InputError", "PreconditionError", "UnsupportedInput",
           "PostconditionError", "OracleDisagreement"]

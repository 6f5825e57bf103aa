"""Exception types shared across the package.

Two broad failure families matter to callers (and to the CLI's exit
codes): problems with the data we were given, and problems arising
during numerical work on valid data.
"""


class InputError(ValueError):
    """Invalid scenario data, file contents, or parameters."""


class NumericalError(RuntimeError):
    """A numerical procedure failed (singular system, overflow, ...)."""

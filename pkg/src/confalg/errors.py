"""Exception types shared across the package."""


class ConfalgError(Exception):
    pass


class DeclarationError(ConfalgError, KeyError):
    """A generator or parameter was used without being declared."""

    def __str__(self):
        return Exception.__str__(self)


class UnsupportedConfiguration(ConfalgError):
    """Structural analysis was requested on an algebra with free parameters."""


class UsageError(ConfalgError, ValueError):
    pass


class LimitExceeded(ConfalgError):
    """An iteration bound was hit before the computation settled."""


class WindowRefused(LimitExceeded):
    """A truncated Fock-space check would leave its exact window."""

    def __init__(self, message: str, required_cutoff: int | None = None):
        super().__init__(message)
        self.required_cutoff = required_cutoff

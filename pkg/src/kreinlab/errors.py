"""Exception types shared by every module."""


class KreinLabError(Exception):
    """Base class for errors raised by kreinlab."""


class InputError(KreinLabError, ValueError):
    """Malformed, non-finite, or shape-incompatible input."""


class ConstructionError(KreinLabError, RuntimeError):
    """A construction finished but failed its own certificate.

    ``witness`` holds the offending element when one is available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

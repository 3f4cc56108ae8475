"""Exception types shared by the engine and the command line."""


class KtqError(Exception):
    """Base class for all engine errors."""


class InvalidInput(KtqError, ValueError):
    """Input data violates a structural requirement (exit code 2 on the CLI)."""


class GroupError(InvalidInput):
    pass


class CocycleError(InvalidInput):
    """A cocycle or homomorphism identity fails; ``where`` locates the first failure."""

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class InternalError(KtqError, AssertionError):
    """An internal consistency check failed (exit code 1 on the CLI)."""

"""Exception hierarchy shared by the engine and the CLI."""


class BLLError(Exception):
    """Base class for all engine errors."""


class DegenerateSystemError(BLLError, ValueError):
    """Two linear forms are parallel (their determinant vanishes)."""

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class PreconditionError(BLLError, ValueError):
    """An operation was called outside its documented domain."""


class UnboundedIntersectionError(BLLError, ValueError):
    """A half-plane intersection has a nontrivial recession cone."""


class CertificateError(BLLError, RuntimeError):
    """An internally computed certificate failed its own exact re-check.

    Seeing this means a bug (or a counterexample), never bad user input.
    """

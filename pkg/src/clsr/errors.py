"""Exception types shared across the package."""


class ClsrError(Exception):
    """Base class for all errors raised by this package."""


class DatasetError(ClsrError):
    """Malformed dataset file or tuple. Carries the offending line when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GenerationError(ClsrError):
    """Dataset generation could not proceed (e.g. no feasible action after retries)."""


class ClusteringError(ClsrError):
    """Contrastive violations exceeded the tolerated fraction."""

    def __init__(self, message: str, violations: list | None = None):
        super().__init__(message)
        self.violations = violations or []


class UnknownStateError(ClsrError):
    """An observation's state does not match any roadmap node (exact mode)."""


class UnknownNodeError(ClsrError):
    """A node id is not present in the roadmap."""


class PathExistsError(ClsrError):
    """Capability suggestion was requested although a plan exists."""

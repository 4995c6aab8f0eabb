"""Exception types shared across the package."""


class DiskPackError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(DiskPackError):
    """Input violates a documented precondition (bad ids, non-finite numbers, ...)."""


class NoIntersectionError(DiskPackError):
    """The two circles do not meet, so no overlap angle is defined."""


class DegenerateTriangleError(DiskPackError):
    """Side lengths violate the triangle inequality beyond roundoff."""


class InvalidConfigurationError(DiskPackError):
    """A disk set breaks a configuration rule, e.g. one disk contains another."""


class UnsupportedInputError(DiskPackError):
    """Structurally valid input outside what the algorithms handle (e.g. disconnected)."""


class InconsistentBoundaryError(DiskPackError):
    """Declared boundary vertices do not bound a single face of the embedding."""


class NonConvergenceError(DiskPackError):
    """Iteration budget exhausted before the residual target was met."""

    def __init__(self, message: str, best_residual: float, iterations: int):
        super().__init__(message)
        self.best_residual = best_residual
        self.iterations = iterations


class InconsistentLayoutError(DiskPackError):
    """Center placement closed around a cycle with a disagreement too large to trust."""


class DegenerateNormalizationError(DiskPackError):
    """Canonical form is undefined, e.g. the first two disks are concentric."""


class ParseError(DiskPackError):
    """A document failed validation; `path` points at the offending element."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path

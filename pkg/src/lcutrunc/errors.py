"""Exception types shared across the package."""


class TermListError(ValueError):
    """Raised for malformed or unusable Hamiltonian term-list input."""


class CapExceeded(RuntimeError):
    """Raised when a dense construction would exceed the configured size cap."""


class ConvergenceError(RuntimeError):
    """Raised when an iterative computation fails to reach its tolerance."""

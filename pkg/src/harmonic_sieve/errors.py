"""Exception types shared across the package."""


class HarmonicSieveError(Exception):
    """Base class for package-specific errors."""


class GroupSpecError(HarmonicSieveError, ValueError):
    """Malformed or inconsistent group specification."""


class ResourceLimitError(HarmonicSieveError, RuntimeError):
    """A requested object exceeds the configured size limits."""


class NumericalFailureError(HarmonicSieveError, RuntimeError):
    """A numerical routine could not certify its result."""


class UnsupportedFamilyError(HarmonicSieveError, NotImplementedError):
    """Explicit irreducible matrices are not available for this group family."""


class InvalidActionError(HarmonicSieveError, ValueError):
    """A caller-supplied action does not behave like a homomorphism image."""

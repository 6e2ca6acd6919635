"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Malformed or inconsistent input (bad modulus, shape mismatch, ...)."""


class ResourceLimit(RuntimeError):
    """A desk-scale cap on field size or grid size was exceeded."""

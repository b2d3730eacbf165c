"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the domain of an operation."""


class PerfectnessError(RuntimeError):
    """A crystal fails a condition required of a perfect crystal."""


class GenericityError(RuntimeError):
    """A sampled point did not behave like a generic point of its component."""


class ConventionError(RuntimeError):
    """Internal consistency check failed; points at a bug, not at bad data."""

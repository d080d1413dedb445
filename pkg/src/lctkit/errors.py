"""Exception taxonomy shared by the library, service and CLI."""


class DomainError(ValueError):
    """A mathematically invalid input (out-of-range value, bad lattice vector, ...)."""


class UsageError(ValueError):
    """A malformed request: empty interval, bad caps, unparsable text."""


class StructuralError(ValueError):
    """A structurally broken resolution graph (not a tree, singular or
    indefinite intersection matrix, dangling ids)."""

"""Exception taxonomy shared across the package.

DomainError means the caller handed us inputs outside an operation's
domain; ConsistencyError means an internal identity that must hold by
theorem failed, i.e. there is a bug somewhere.
"""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """A substitution made a denominator factor vanish identically."""


class ConsistencyError(RuntimeError):
    """An exact identity guaranteed by theory failed to hold."""

"""Exception hierarchy shared by all toplattice modules."""

from __future__ import annotations


class ToplatticeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(ToplatticeError):
    """An input violates a documented precondition on its shape or value."""


class PreconditionError(ToplatticeError):
    """A mathematical precondition (coprimality, basis conditions, ...) fails."""


class ResourceLimitError(ToplatticeError):
    """A configured size or count cap would be exceeded; refuse, never degrade."""


class NotAPosetError(InvalidArgumentError):
    """An order matrix is not reflexive, antisymmetric and transitive."""


class NotALatticeError(InvalidArgumentError):
    """A poset has a pair of elements with no least upper or greatest lower bound."""


class InvalidIntervalError(InvalidArgumentError):
    """Interval endpoints are not comparable in the required direction."""

"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class DegenerateError(Exception):
    """Base class for all errors raised by degenseries."""


class UsageError(DegenerateError, ValueError):
    """Operands are incompatible or a required argument is missing."""


class DomainError(DegenerateError, ArithmeticError):
    """A mathematical precondition fails (non-invertible constant term, zero scale, ...)."""

"""Exception hierarchy shared by every module."""


class MagnetiteError(Exception):
    """Base class for all errors raised by magnetite."""


class DimensionError(MagnetiteError, ValueError):
    """Operands live in different ambient groups."""


class NotSharpError(MagnetiteError, ValueError):
    """An operation that needs a sharp monoid received one with units."""


class NotInMonoidError(MagnetiteError, ValueError):
    """An element required to lie in some monoid does not."""


class ResourceLimitError(MagnetiteError, RuntimeError):
    """A configured enumeration or search cap was exceeded.

    Raised instead of returning a possibly wrong answer.
    """


class InvariantViolation(MagnetiteError, AssertionError):
    """Something that theory says cannot happen, happened."""

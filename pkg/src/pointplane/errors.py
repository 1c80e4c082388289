"""Exception hierarchy shared by every module."""


class GeometryError(Exception):
    """Base class for errors raised by this package."""


class UsageError(GeometryError, ValueError):
    """A caller violated a precondition (bad id, equal arguments, ...)."""


class DomainError(GeometryError, ArithmeticError):
    """An operation is undefined on its input (zero inverse, zero vector)."""


class StructuralError(GeometryError):
    """A derived object is ill-defined: the ambient structure is not a model."""


class NotALineError(StructuralError):
    """Two elements do not generate a line satisfying the polar-closure rules.

    ``violation`` names the closure that broke.
    """

    def __init__(self, message: str, violation: str):
        super().__init__(message)
        self.violation = violation

"""Exception hierarchy shared by every module of the package."""


class ZMCError(Exception):
    """Base class. ``expr`` names the sub-expression that failed, when known."""

    def __init__(self, message="", expr=None):
        super().__init__(message)
        self.expr = expr

    def __str__(self):
        msg = str(self.args[0]) if self.args else ""
        if self.expr is not None:
            msg = f"{msg} (in {self.expr})"
        return msg


class NonInvertible(ZMCError, ZeroDivisionError):
    """Division by a para-complex number on the null cone."""


class NullConeArgument(ZMCError, ValueError):
    """Logarithm or hyperbolic argument requested on the null cone."""


class DomainViolation(ZMCError, ValueError):
    """A point, stencil or path left the admissible domain."""


class PathDependent(ZMCError):
    """Two integration paths disagree: the domain was not simply connected."""


class QuadratureError(ZMCError):
    """Adaptive quadrature failed to converge (usually a singular crossing)."""


class UnknownEntry(ZMCError, KeyError):
    """Catalog lookup with an unknown name."""

    __str__ = ZMCError.__str__

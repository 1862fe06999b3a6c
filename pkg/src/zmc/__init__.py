"""Zero-mean-curvature surfaces in Lorentz-Minkowski 3-space from para-complex data."""
from .errors import (DomainViolation, NonInvertible, NullConeArgument, PathDependent,
                     QuadratureError, UnknownEntry, ZMCError)
from .paracomplex import ParaComplex
from .weierstrass import Formula, Point3, SurfacePatch, WeierstrassData

__all__ = [
    "ParaComplex", "Formula", "Point3", "SurfacePatch", "WeierstrassData",
    "ZMCError", "NonInvertible", "NullConeArgument", "DomainViolation", "PathDependent",
    "QuadratureError", "UnknownEntry",
]
__version__ = "0.1.0"

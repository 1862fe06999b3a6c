"""Arithmetic and elementary functions on the para-complex (split-complex) ring.

A para-complex number is ``u + j v`` with ``j**2 == 1``.  The ring has zero
divisors: every nonzero number with ``|u| == |v|`` lies on the *null cone*
and has no inverse.  Most of the structure becomes transparent in null
coordinates ``(u + v, u - v)``, where multiplication is componentwise and
every real function ``f`` lifts to ``f~(z) = e1 f(u+v) + e2 f(u-v)`` with the
idempotents ``e1 = (1+j)/2`` and ``e2 = (1-j)/2``.

The components of a :class:`ParaComplex` may be floats or numpy arrays of a
common shape; all operations broadcast, so grids are evaluated in one call.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainViolation, NonInvertible, NullConeArgument

#: Relative thickness of the null cone used for invertibility decisions.
TAU_INV = 1e-12


def _scalarize(x):
    if np.ndim(x) == 0:
        return float(x)
    return np.asarray(x, dtype=float)


class ParaComplex:
    """The number ``re + j*im``; immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0.0, im=0.0):
        object.__setattr__(self, "re", _scalarize(re))
        object.__setattr__(self, "im", _scalarize(im))

    def __setattr__(self, name, value):
        raise AttributeError("ParaComplex is immutable")

    @classmethod
    def coerce(cls, value) -> "ParaComplex":
        if isinstance(value, ParaComplex):
            return value
        if isinstance(value, complex):
            raise TypeError("complex numbers are not para-complex; use ParaComplex(re, im)")
        return cls(value, 0.0)

    @property
    def shape(self):
        return np.broadcast(self.re, self.im).shape

    def __getitem__(self, idx):
        re, im = np.broadcast_arrays(self.re, self.im)
        return ParaComplex(re[idx], im[idx])

    def __iter__(self):
        # Refuse iteration so numpy never mistakes a ParaComplex for a sequence.
        raise TypeError("ParaComplex is not iterable; index arrays explicitly")

    # ring operations -------------------------------------------------
    def __add__(self, other):
        try:
            w = ParaComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ParaComplex(self.re + w.re, self.im + w.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            w = ParaComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ParaComplex(self.re - w.re, self.im - w.im)

    def __rsub__(self, other):
        return ParaComplex.coerce(other) - self

    def __neg__(self):
        return ParaComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        try:
            w = ParaComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ParaComplex(self.re * w.re + self.im * w.im,
                           self.re * w.im + self.im * w.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return divide(self, other)

    def __rtruediv__(self, other):
        return divide(other, self)

    def __pow__(self, n):
        return power(self, n)

    def __eq__(self, other):
        try:
            w = ParaComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return bool(np.all(self.re == w.re) and np.all(self.im == w.im))

    def __hash__(self):
        if self.shape:
            raise TypeError("array-valued ParaComplex is unhashable")
        return hash((self.re, self.im))

    def __repr__(self):
        if self.shape:
            return f"ParaComplex(shape={self.shape})"
        sign = "-" if np.signbit(self.im) else "+"
        return f"({self.re!r} {sign} {abs(self.im)!r}j)"

    def conj(self) -> "ParaComplex":
        return ParaComplex(self.re, -self.im)

    def norm2(self):
        return norm2(self)

    def isclose(self, other, rtol=1e-12, atol=1e-12) -> bool:
        w = ParaComplex.coerce(other)
        return bool(np.allclose(self.re, w.re, rtol=rtol, atol=atol)
                    and np.allclose(self.im, w.im, rtol=rtol, atol=atol))


J = ParaComplex(0.0, 1.0)
#: Idempotents projecting onto the two light-like lines.
E1 = ParaComplex(0.5, 0.5)
E2 = ParaComplex(0.5, -0.5)


# quadratic forms ------------------------------------------------------
def norm2(z):
    """``z * conj(z) = re**2 - im**2`` (indefinite)."""
    z = ParaComplex.coerce(z)
    return _scalarize((z.re - z.im) * (z.re + z.im))


def conj(z) -> ParaComplex:
    return ParaComplex.coerce(z).conj()


def modulus(z):
    """``sqrt(|norm2(z)|)``; vanishes on the whole null cone."""
    return _scalarize(np.sqrt(np.abs(norm2(z))))


def euclid2(z):
    """Euclidean ``re**2 + im**2``, the scale used for tolerances."""
    z = ParaComplex.coerce(z)
    return _scalarize(z.re * z.re + z.im * z.im)


def on_null_cone(z, tol: float = TAU_INV):
    """Mask of points whose norm2 vanishes relative to their Euclidean size."""
    z = ParaComplex.coerce(z)
    return np.abs(norm2(z)) <= tol * euclid2(z)


# arithmetic ----------------------------------------------------------
def divide(a, b, tol: float = TAU_INV, strict: bool = True) -> ParaComplex:
    """``a / b``.  Raises :class:`NonInvertible` if ``b`` is on the null cone.

    With ``strict=False`` null-cone divisors give NaN instead of raising.
    """
    a = ParaComplex.coerce(a)
    b = ParaComplex.coerce(b)
    n = norm2(b)
    bad = on_null_cone(b, tol)
    if np.any(bad):
        if strict:
            raise NonInvertible(f"divisor {b!r} lies on the null cone")
        n = np.where(bad, np.nan, n)
    q = a * b.conj()
    with np.errstate(divide="ignore", invalid="ignore"):
        return ParaComplex(q.re / n, q.im / n)


def arith(a, b, op: str) -> ParaComplex:
    """Dispatch ``op`` in {add, sub, mul, div}."""
    a = ParaComplex.coerce(a)
    b = ParaComplex.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return divide(a, b)
    raise ValueError(f"unknown op {op!r}")


def power(z, n: int, strict: bool = True) -> ParaComplex:
    """Integer power; negative exponents need an invertible base."""
    if int(n) != n:
        raise TypeError("only integer powers are defined")
    n = int(n)
    z = ParaComplex.coerce(z)
    if n < 0:
        return divide(1.0, power(z, -n), strict=strict)
    # null coordinates make this exact up to the final rounding
    p = to_null(z)
    return from_null(NullPair(p.plus ** n, p.minus ** n))


# null coordinates -----------------------------------------------------
@dataclass(frozen=True)
class NullPair:
    """Coefficients of ``e1`` and ``e2``: ``z = plus*e1 + minus*e2``."""

    plus: float
    minus: float


def to_null(z) -> NullPair:
    z = ParaComplex.coerce(z)
    return NullPair(_scalarize(z.re + z.im), _scalarize(z.re - z.im))


def from_null(p: NullPair) -> ParaComplex:
    return ParaComplex(0.5 * (p.plus + p.minus), 0.5 * (p.plus - p.minus))


# polar form -----------------------------------------------------------
class Branch(enum.Enum):
    TIMELIKE = "timelike-norm-positive"
    SPACELIKE = "spacelike-norm-negative"


@dataclass(frozen=True)
class PolarForm:
    """``sign * e**s * (cosh t + j sinh t)`` or ``sign * e**s * (sinh t + j cosh t)``."""

    sign: int
    s: float
    t: float
    branch: Branch


def _require_off_cone(z, what):
    if np.any(on_null_cone(z)):
        raise NullConeArgument(f"{what} undefined on the null cone: {z!r}")


def argh(z):
    """Hyperbolic argument ``t`` of the polar form."""
    z = ParaComplex.coerce(z)
    _require_off_cone(z, "argh")
    p = to_null(z)
    return _scalarize(0.5 * (np.log(np.abs(p.plus)) - np.log(np.abs(p.minus))))


def polar_decompose(z) -> PolarForm:
    z = ParaComplex.coerce(z)
    if z.shape:
        raise TypeError("polar_decompose works on scalars")
    _require_off_cone(z, "polar form")
    n = norm2(z)
    p = to_null(z)
    s = 0.5 * (np.log(abs(p.plus)) + np.log(abs(p.minus)))
    t = argh(z)
    if n > 0:
        return PolarForm(int(np.sign(z.re)), float(s), t, Branch.TIMELIKE)
    return PolarForm(int(np.sign(z.im)), float(s), t, Branch.SPACELIKE)


def polar_compose(pf: PolarForm) -> ParaComplex:
    r = pf.sign * np.exp(pf.s)
    if pf.branch is Branch.TIMELIKE:
        return ParaComplex(r * np.cosh(pf.t), r * np.sinh(pf.t))
    return ParaComplex(r * np.sinh(pf.t), r * np.cosh(pf.t))


def polar_grid(sign, s, t, branch: Branch) -> ParaComplex:
    """Vectorized :func:`polar_compose` over arrays ``s`` and ``t``."""
    r = sign * np.exp(s)
    if branch is Branch.TIMELIKE:
        return ParaComplex(r * np.cosh(t), r * np.sinh(t))
    return ParaComplex(r * np.sinh(t), r * np.cosh(t))


# lifted real functions ------------------------------------------------
def lift(f: Callable, z) -> ParaComplex:
    """Apply ``f`` along both null lines: ``e1 f(u+v) + e2 f(u-v)``."""
    p = to_null(z)
    fp = f(p.plus)
    fm = f(p.minus)
    return ParaComplex(0.5 * (fp + fm), 0.5 * (fp - fm))


def p_exp(z) -> ParaComplex:
    return lift(np.exp, z)


def p_log(z, strict: bool = True) -> ParaComplex:
    """``log sqrt|norm2 z| + j log sqrt(|u+v| / |u-v|)``.

    Defined on all four quadrants off the null cone.  ``exp(log z) == z``
    only when ``norm2(z) > 0`` and ``re z > 0``.
    """
    z = ParaComplex.coerce(z)
    bad = on_null_cone(z)
    if np.any(bad):
        if strict:
            raise NullConeArgument(f"log undefined on the null cone: {z!r}")
    with np.errstate(divide="ignore", invalid="ignore"):
        w = lift(lambda x: np.log(np.abs(x)), z)
    if np.any(bad):
        return ParaComplex(np.where(bad, np.nan, w.re), np.where(bad, np.nan, w.im))
    return w


def p_arctan(z) -> ParaComplex:
    return lift(np.arctan, z)


def p_sin(z) -> ParaComplex:
    return lift(np.sin, z)


def p_cos(z) -> ParaComplex:
    return lift(np.cos, z)


def p_sinh(z) -> ParaComplex:
    return lift(np.sinh, z)


def p_cosh(z) -> ParaComplex:
    return lift(np.cosh, z)


def tilde_extend(f: Callable, domain: Callable | None = None) -> Callable:
    """Lift a real function to a para-holomorphic one.

    ``domain`` is a predicate on reals (vectorized); evaluating where either
    null coordinate falls outside it raises :class:`DomainViolation`.
    """

    def extended(z):
        z = ParaComplex.coerce(z)
        p = to_null(z)
        if domain is not None:
            ok = np.logical_and(domain(p.plus), domain(p.minus))
            if not np.all(ok):
                raise DomainViolation(f"{getattr(f, '__name__', 'f')}~ outside its domain at {z!r}")
        return lift(f, z)

    extended.__name__ = f"{getattr(f, '__name__', 'f')}_tilde"
    return extended

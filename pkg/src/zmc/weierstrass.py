"""The four representation formulas for time-like zero-mean-curvature surfaces.

Given para-holomorphic Weierstrass data ``(g, omega)`` the immersions are

    F1 = Re  int (-1 - g^2, j(1 - g^2), 2g) omega dz
    F2 = Im  int (-1 - g^2, j(1 - g^2), 2g) omega dz
    F3 = Re  int (-1 - g^2, 2jg, -1 + g^2) omega dz
    F4 = Im  int (-1 - g^2, 2jg, -1 + g^2) omega dz

in Lorentz-Minkowski space with coordinates ``(t, x, y)`` and signature
``(-, +, +)``.  Every surface is normalized so that ``F(base) = 0``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Mapping, NamedTuple

import numpy as np

from . import paracomplex as pc
from ._quadrature import integrate_unit
from .errors import DomainViolation, NonInvertible
from .paracomplex import NullPair, ParaComplex, from_null, to_null
from .paraholo import (J, NoClosedForm, NullSplit, ParaExpr, RegionSpec,
                       antiderivative, line_integral)


class Formula(str, enum.Enum):
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"

    @property
    def kind(self) -> str:
        """``first`` for F1/F2, ``third`` for F3/F4."""
        return "first" if self in (Formula.F1, Formula.F2) else "third"

    @property
    def takes_imaginary_part(self) -> bool:
        return self in (Formula.F2, Formula.F4)


class Point3(NamedTuple):
    """A point (or array of points) of R^3_1."""

    t: float
    x: float
    y: float


def lorentz_inner(a, b):
    """Inner product of signature (-, +, +); the leading axis holds (t, x, y)."""
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def lorentz_cross(a, b):
    """Vector orthogonal to ``a`` and ``b`` for :func:`lorentz_inner`."""
    c = np.cross(np.moveaxis(np.asarray(a), 0, -1), np.moveaxis(np.asarray(b), 0, -1))
    c = np.moveaxis(c, -1, 0)
    return np.stack([-c[0], c[1], c[2]])


@dataclass(frozen=True)
class WeierstrassData:
    """Weierstrass data with base point and region.

    ``primitives`` optionally maps ``"first"``/``"third"`` to a closed-form
    antiderivative triple of the matching integrand.
    """

    g: ParaExpr
    omega: ParaExpr
    base: ParaComplex = field(default_factory=lambda: ParaComplex(0.0))
    region: RegionSpec | None = None
    primitives: Mapping[str, tuple] = field(default_factory=dict)
    name: str = ""

    def with_region(self, region: RegionSpec) -> "WeierstrassData":
        return replace(self, region=region, base=region.base)


def integrand(d: WeierstrassData, formula) -> tuple:
    g, w = d.g, d.omega
    if Formula(formula).kind == "first":
        return ((-1 - g ** 2) * w, J * (1 - g ** 2) * w, 2 * g * w)
    return ((-1 - g ** 2) * w, 2 * J * g * w, (-1 + g ** 2) * w)


def primitive(d: WeierstrassData, formula):
    """Closed-form antiderivative triple, or None when none is available."""
    kind = Formula(formula).kind
    if kind in d.primitives:
        return tuple(d.primitives[kind])
    try:
        return tuple(antiderivative(c) for c in integrand(d, formula))
    except NoClosedForm:
        return None


@dataclass(frozen=True)
class SurfacePatch:
    data: WeierstrassData
    formula: Formula
    mode: str = "auto"  # auto | closed | numeric

    def __post_init__(self):
        object.__setattr__(self, "formula", Formula(self.formula))
        if self.mode not in ("auto", "closed", "numeric"):
            raise ValueError(f"unknown evaluator mode {self.mode!r}")

    @property
    def closed_form(self):
        if self.mode == "numeric":
            return None
        prim = primitive(self.data, self.formula)
        if prim is None and self.mode == "closed":
            raise NoClosedForm(f"no closed form for {self.data.name or 'data'} {self.formula.value}")
        return prim

    def __call__(self, z, normalized: bool = True) -> Point3:
        return evaluate_immersion(self, z, normalized)


def _part(values, imaginary):
    return Point3(*[v.im if imaginary else v.re for v in values])


def evaluate_immersion(p: SurfacePatch, z, normalized: bool = True) -> Point3:
    """Surface point(s) at ``z``.

    ``normalized=False`` (closed-form mode only) returns the raw primitive
    without subtracting its value at the base point.
    """
    d = p.data
    z = ParaComplex.coerce(z)
    if d.region is not None and not np.all(d.region.satisfies_constraints(z)):
        raise DomainViolation(f"point outside region {d.region.name or ''}".strip())
    imag = p.formula.takes_imaginary_part
    prim = p.closed_form
    if prim is not None:
        vals = [c.eval(z) for c in prim]
        if normalized:
            vals = [v - c.eval(d.base) for v, c in zip(vals, prim)]
        return _part(vals, imag)
    if not normalized:
        raise ValueError("un-normalized evaluation needs a closed-form primitive")
    vals = line_integral(list(integrand(d, p.formula)), d.base, z, region=None)
    return _part(vals, imag)


def dual_transform(d: WeierstrassData) -> WeierstrassData:
    """``(g, w) -> ((g - 1)/(g + 1), (1 + g)^2 w / 2)``.

    The first-kind integrand of the result is the third-kind integrand of
    ``d``.  The region gains the constraint that ``g + 1`` stays on the
    base point's side of the null cone.
    """
    gp1 = d.g + 1
    at_base = gp1.eval(d.base)
    if pc.on_null_cone(at_base):
        raise NonInvertible("g + 1 is not invertible at the base point", expr=gp1)
    region = d.region
    if region is not None:
        sign = 1 if pc.norm2(at_base) > 0 else -1
        region = replace(region, constraints=region.constraints + ((gp1, sign),),
                         name=f"{region.name}|g+1" if region.name else "g+1")
    return WeierstrassData(
        g=(d.g - 1) / gp1,
        omega=gp1 ** 2 * d.omega / 2,
        base=d.base,
        region=region,
        name=f"dual({d.name})" if d.name else "dual",
    )


def conformal_factor(d: WeierstrassData, formula, z):
    """``lam`` with first fundamental form ``lam (du^2 - dv^2)``."""
    formula = Formula(formula)
    gz = d.g.eval(z)
    n_omega = pc.norm2(d.omega.eval(z))
    if formula.kind == "first":
        lam = -(1.0 - pc.norm2(gz)) ** 2 * n_omega
    else:
        lam = -(2.0 * gz.re) ** 2 * n_omega
    return -lam if formula.takes_imaginary_part else lam


def _shifted(z, du, dv):
    return ParaComplex(z.re + du, z.im + dv)


def first_fundamental_form_fd(p: SurfacePatch, z, h: float = 1e-4):
    """``(E, F, G)`` from five-point (fourth-order) central differences."""
    z = ParaComplex.coerce(z)

    def d(du, dv):
        f = lambda k: np.array(p(_shifted(z, k * du, k * dv)))
        return (8 * (f(1) - f(-1)) - (f(2) - f(-2))) / (12 * h)

    Fu, Fv = d(h, 0), d(0, h)
    return lorentz_inner(Fu, Fu), lorentz_inner(Fu, Fv), lorentz_inner(Fv, Fv)


def mean_curvature_fd(p: SurfacePatch, z, h: float = 2e-4):
    """Mean curvature from finite-difference fundamental forms.

    NaN where the tangent plane is (numerically) light-like, since the unit
    normal is undefined there.
    """
    z = ParaComplex.coerce(z)
    f = lambda du, dv: np.array(p(_shifted(z, du, dv)))
    f0 = f(0, 0)
    fpu, fmu, fpv, fmv = f(h, 0), f(-h, 0), f(0, h), f(0, -h)
    Fu = (fpu - fmu) / (2 * h)
    Fv = (fpv - fmv) / (2 * h)
    Fuu = (fpu - 2 * f0 + fmu) / h ** 2
    Fvv = (fpv - 2 * f0 + fmv) / h ** 2
    Fuv = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h ** 2)
    E, F, G = lorentz_inner(Fu, Fu), lorentz_inner(Fu, Fv), lorentz_inner(Fv, Fv)
    nu = lorentz_cross(Fu, Fv)
    nn = lorentz_inner(nu, nu)
    with np.errstate(invalid="ignore", divide="ignore"):
        scale = np.where(np.abs(nn) > 1e-10, 1.0 / np.sqrt(np.abs(nn)), np.nan)
        L = lorentz_inner(Fuu, nu) * scale
        M = lorentz_inner(Fuv, nu) * scale
        N = lorentz_inner(Fvv, nu) * scale
        H = (E * N - 2 * F * M + G * L) / (2 * (E * G - F * F))
    return pc._scalarize(H)


# null-coordinate rewrite ------------------------------------------------------
def _null_components(expr, base, region):
    return NullSplit(expr, to_null(base), region)


def null_form_immersion(d: WeierstrassData, formula, x, y, tol: float = 1e-10) -> Point3:
    """Evaluate via two real integrals along the light-like coordinates.

    ``x = (u+v)/2`` and ``y = (u-v)/2``; the result equals
    ``evaluate_immersion`` at ``z = (x+y) + j(x-y)``.
    """
    formula = Formula(formula)
    gs = _null_components(d.g, d.base, d.region)
    ws = _null_components(d.omega, d.base, d.region)
    b = to_null(d.base)
    flip = -1.0 if formula.takes_imaginary_part else 1.0
    first = formula.kind == "first"

    def one(lo, hi, G, W, sign, wsign):
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        span = hi - lo

        def f(tau):
            s = lo + tau.reshape((-1,) + (1,) * span.ndim) * span
            g = G(2 * s)
            w = wsign * W(2 * s)
            if first:
                comps = [(-1 - g * g) * w, sign * (1 - g * g) * w, 2 * g * w]
            else:
                comps = [(-1 - g * g) * w, sign * 2 * g * w, (-1 + g * g) * w]
            return np.stack(comps, axis=1) * span

        return integrate_unit(f, tol=tol)

    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x, y = np.broadcast_arrays(x, y)
    part1 = one(0.5 * b.plus, x, gs.f_plus, ws.f_plus, 1.0, 1.0)
    part2 = one(0.5 * b.minus, y, gs.f_minus, ws.f_minus, -1.0, flip)
    total = part1 + part2
    return Point3(*[pc._scalarize(c) for c in total])


def null_to_para(x, y) -> ParaComplex:
    """The point ``z`` with ``u + v = 2x`` and ``u - v = 2y``."""
    return from_null(NullPair(2 * np.asarray(x, dtype=float), 2 * np.asarray(y, dtype=float)))

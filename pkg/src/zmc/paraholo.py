"""Para-holomorphic expressions in one variable ``z``.

Expressions are small immutable trees built with ordinary operators::

    >>> from zmc.paraholo import z, log
    >>> A = (z + 1) / (z - 1)
    >>> print(log(A))
    log(div(add(z, 1), sub(z, 1)))

They evaluate on scalars or on whole grids, differentiate symbolically, and
round-trip through a compact prefix text format (:func:`dumps`/:func:`parse`).
The module also provides the numerical companions used to check para-
holomorphicity: the para-Cauchy-Riemann residual, the null splitting into two
single-variable functions, and line integrals of ``phi(z) dz``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from . import paracomplex as pc
from ._quadrature import integrate_unit
from .errors import (DomainViolation, NonInvertible, NullConeArgument,
                     PathDependent, QuadratureError, ZMCError)
from .paracomplex import NullPair, ParaComplex, from_null, to_null


class NoClosedForm(ZMCError):
    """The integrand is outside the table of closed-form antiderivatives."""


def _wrap(x) -> "ParaExpr":
    if isinstance(x, ParaExpr):
        return x
    return Const(ParaComplex.coerce(x))


class ParaExpr:
    """Base class of expression nodes."""

    children: tuple = ()

    # construction sugar
    def __add__(self, other):
        return Add(self, _wrap(other))

    def __radd__(self, other):
        return Add(_wrap(other), self)

    def __sub__(self, other):
        return Sub(self, _wrap(other))

    def __rsub__(self, other):
        return Sub(_wrap(other), self)

    def __mul__(self, other):
        return Mul(self, _wrap(other))

    def __rmul__(self, other):
        return Mul(_wrap(other), self)

    def __truediv__(self, other):
        return Div(self, _wrap(other))

    def __rtruediv__(self, other):
        return Div(_wrap(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, n):
        return Pow(self, int(n))

    def __str__(self):
        return dumps(self)

    def __call__(self, z, strict: bool = True) -> ParaComplex:
        return self.eval(z, strict)

    def eval(self, z, strict: bool = True) -> ParaComplex:
        """Value at ``z`` (scalar or array).  ``strict=False`` maps domain
        failures to NaN instead of raising."""
        z = ParaComplex.coerce(z)
        out = self._ev(z, strict)
        if out.shape != z.shape:
            re, im, _ = np.broadcast_arrays(out.re, out.im, np.empty(z.shape))
            out = ParaComplex(re.copy(), im.copy())
        return out

    def _ev(self, z, strict):
        try:
            return self._eval(z, strict)
        except ZMCError as exc:
            if exc.expr is None:
                exc.expr = self
            raise

    def _eval(self, z, strict):
        raise NotImplementedError

    def deriv(self) -> "ParaExpr":
        raise NotImplementedError


@dataclass(frozen=True, repr=False)
class Var(ParaExpr):
    def _eval(self, z, strict):
        return z

    def deriv(self):
        return ONE

    def __repr__(self):
        return "Var()"


@dataclass(frozen=True, repr=False)
class Const(ParaExpr):
    value: ParaComplex

    def _eval(self, z, strict):
        return self.value

    def deriv(self):
        return ZERO

    def __repr__(self):
        return f"Const{self.value!r}"


@dataclass(frozen=True, repr=False)
class _Binary(ParaExpr):
    a: ParaExpr
    b: ParaExpr

    @property
    def children(self):
        return (self.a, self.b)

    def __repr__(self):
        return f"{type(self).__name__}({self.a!r}, {self.b!r})"


class Add(_Binary):
    def _eval(self, z, strict):
        return self.a._ev(z, strict) + self.b._ev(z, strict)

    def deriv(self):
        return _add(self.a.deriv(), self.b.deriv())


class Sub(_Binary):
    def _eval(self, z, strict):
        return self.a._ev(z, strict) - self.b._ev(z, strict)

    def deriv(self):
        return _sub(self.a.deriv(), self.b.deriv())


class Mul(_Binary):
    def _eval(self, z, strict):
        return self.a._ev(z, strict) * self.b._ev(z, strict)

    def deriv(self):
        return _add(_mul(self.a.deriv(), self.b), _mul(self.a, self.b.deriv()))


class Div(_Binary):
    def _eval(self, z, strict):
        return pc.divide(self.a._ev(z, strict), self.b._ev(z, strict), strict=strict)

    def deriv(self):
        num = _sub(_mul(self.a.deriv(), self.b), _mul(self.a, self.b.deriv()))
        if _is_zero(num):
            return ZERO
        return Div(num, Pow(self.b, 2))


@dataclass(frozen=True, repr=False)
class _Unary(ParaExpr):
    a: ParaExpr

    @property
    def children(self):
        return (self.a,)

    def __repr__(self):
        return f"{type(self).__name__}({self.a!r})"


class Neg(_Unary):
    def _eval(self, z, strict):
        return -self.a._ev(z, strict)

    def deriv(self):
        return _neg(self.a.deriv())


@dataclass(frozen=True, repr=False)
class Pow(ParaExpr):
    a: ParaExpr
    n: int

    @property
    def children(self):
        return (self.a,)

    def _eval(self, z, strict):
        return pc.power(self.a._ev(z, strict), self.n, strict=strict)

    def deriv(self):
        if self.n == 0:
            return ZERO
        inner = ONE if self.n == 1 else (self.a if self.n == 2 else Pow(self.a, self.n - 1))
        return _mul(_mul(_const(self.n), inner), self.a.deriv())

    def __repr__(self):
        return f"Pow({self.a!r}, {self.n})"


class Exp(_Unary):
    def _eval(self, z, strict):
        return pc.p_exp(self.a._ev(z, strict))

    def deriv(self):
        return _mul(self, self.a.deriv())


class Log(_Unary):
    def _eval(self, z, strict):
        return pc.p_log(self.a._ev(z, strict), strict=strict)

    def deriv(self):
        da = self.a.deriv()
        return ZERO if _is_zero(da) else Div(da, self.a)


class Arctan(_Unary):
    def _eval(self, z, strict):
        return pc.p_arctan(self.a._ev(z, strict))

    def deriv(self):
        da = self.a.deriv()
        return ZERO if _is_zero(da) else Div(da, Add(ONE, Pow(self.a, 2)))


class Sinh(_Unary):
    def _eval(self, z, strict):
        return pc.p_sinh(self.a._ev(z, strict))

    def deriv(self):
        return _mul(Cosh(self.a), self.a.deriv())


class Cosh(_Unary):
    def _eval(self, z, strict):
        return pc.p_cosh(self.a._ev(z, strict))

    def deriv(self):
        return _mul(Sinh(self.a), self.a.deriv())


class Sin(_Unary):
    def _eval(self, z, strict):
        return pc.p_sin(self.a._ev(z, strict))

    def deriv(self):
        return _mul(Cos(self.a), self.a.deriv())


class Cos(_Unary):
    def _eval(self, z, strict):
        return pc.p_cos(self.a._ev(z, strict))

    def deriv(self):
        return _neg(_mul(Sin(self.a), self.a.deriv()))


@dataclass(frozen=True, repr=False)
class Compose(ParaExpr):
    """``outer`` evaluated at the value of ``inner``."""

    outer: ParaExpr
    inner: ParaExpr

    @property
    def children(self):
        return (self.outer, self.inner)

    def _eval(self, z, strict):
        return self.outer._ev(self.inner._ev(z, strict), strict)

    def deriv(self):
        return _mul(Compose(self.outer.deriv(), self.inner), self.inner.deriv())

    def __repr__(self):
        return f"Compose({self.outer!r}, {self.inner!r})"


z = Var()
ZERO = Const(ParaComplex(0.0))
ONE = Const(ParaComplex(1.0))
J = Const(ParaComplex(0.0, 1.0))


def const(re, im=0.0) -> Const:
    return Const(ParaComplex(re, im))


def exp(e) -> ParaExpr:
    return Exp(_wrap(e))


def log(e) -> ParaExpr:
    return Log(_wrap(e))


def arctan(e) -> ParaExpr:
    return Arctan(_wrap(e))


def sinh(e) -> ParaExpr:
    return Sinh(_wrap(e))


def cosh(e) -> ParaExpr:
    return Cosh(_wrap(e))


def sin(e) -> ParaExpr:
    return Sin(_wrap(e))


def cos(e) -> ParaExpr:
    return Cos(_wrap(e))


def compose(outer, inner) -> ParaExpr:
    return Compose(_wrap(outer), _wrap(inner))


# light simplification used by deriv -----------------------------------
def _const(x):
    return Const(ParaComplex.coerce(x))


def _is_const(e, value=None):
    if not isinstance(e, Const):
        return False
    return value is None or e.value == value


def _is_zero(e):
    return _is_const(e, 0.0)


def _add(a, b):
    if _is_zero(a):
        return b
    if _is_zero(b):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    return Add(a, b)


def _sub(a, b):
    if _is_zero(b):
        return a
    if _is_zero(a):
        return _neg(b)
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    return Sub(a, b)


def _neg(a):
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.a
    return Neg(a)


def _mul(a, b):
    if _is_zero(a) or _is_zero(b):
        return ZERO
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if isinstance(b, Const):
        a, b = b, a
    return Mul(a, b)


def evaluate(e: ParaExpr, z, strict: bool = True) -> ParaComplex:
    return e.eval(z, strict)


def deriv(e: ParaExpr) -> ParaExpr:
    return e.deriv()


# prefix text format ----------------------------------------------------
_UNARY = {"neg": Neg, "exp": Exp, "log": Log, "arctan": Arctan,
          "sinh": Sinh, "cosh": Cosh, "sin": Sin, "cos": Cos}
_BINARY = {"add": Add, "sub": Sub, "mul": Mul, "div": Div, "compose": Compose}
_NAMES = {cls: name for name, cls in {**_UNARY, **_BINARY}.items()}


def _fmt_num(x: float) -> str:
    if float(x).is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


def dumps(e: ParaExpr) -> str:
    """Serialize to prefix notation, e.g. ``div(1, sub(pow(z, 4), 1))``."""
    if isinstance(e, Var):
        return "z"
    if isinstance(e, Const):
        v = e.value
        if v.im == 0:
            return _fmt_num(v.re)
        if v.re == 0 and v.im == 1:
            return "j"
        return f"pc({_fmt_num(v.re)}, {_fmt_num(v.im)})"
    if isinstance(e, Pow):
        return f"pow({dumps(e.a)}, {e.n})"
    name = _NAMES[type(e)]
    return f"{name}({', '.join(dumps(c) for c in e.children)})"


_TOKEN = re.compile(r"\s*(?:([A-Za-z_]\w*)|([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)|(.))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        name, num, punct = m.groups()
        if name:
            out.append(("name", name))
        elif num:
            out.append(("num", num))
        elif punct and not punct.isspace():
            out.append(("punct", punct))
    return out


def parse(text: str) -> ParaExpr:
    """Inverse of :func:`dumps`."""
    toks = _tokenize(text)
    pos = 0

    def expect(value):
        nonlocal pos
        if pos >= len(toks) or toks[pos] != ("punct", value):
            raise ValueError(f"expected {value!r} at token {pos} in {text!r}")
        pos += 1

    def number():
        nonlocal pos
        if pos >= len(toks) or toks[pos][0] != "num":
            raise ValueError(f"expected a number at token {pos} in {text!r}")
        pos += 1
        return float(toks[pos - 1][1])

    def node():
        nonlocal pos
        if pos >= len(toks):
            raise ValueError(f"unexpected end of {text!r}")
        kind, val = toks[pos]
        pos += 1
        if kind == "num":
            return const(float(val))
        if kind != "name":
            raise ValueError(f"unexpected {val!r} in {text!r}")
        if val == "z":
            return Var()
        if val == "j":
            return J
        expect("(")
        if val == "pc":
            re_ = number()
            expect(",")
            im_ = number()
            out = const(re_, im_)
        elif val == "pow":
            base = node()
            expect(",")
            n = number()
            if not float(n).is_integer():
                raise ValueError("pow needs an integer exponent")
            out = Pow(base, int(n))
        elif val in _UNARY:
            out = _UNARY[val](node())
        elif val in _BINARY:
            a = node()
            expect(",")
            out = _BINARY[val](a, node())
        else:
            raise ValueError(f"unknown function {val!r}")
        expect(")")
        return out

    e = node()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return e


# para-Cauchy-Riemann checks -------------------------------------------------
def _fd_partials(e, z, h):
    z = ParaComplex.coerce(z)
    try:
        fu = [e.eval(ParaComplex(z.re + s * h, z.im)) for s in (1, -1)]
        fv = [e.eval(ParaComplex(z.re, z.im + s * h)) for s in (1, -1)]
    except (NonInvertible, NullConeArgument, DomainViolation) as exc:
        raise DomainViolation(f"finite-difference stencil leaves the domain near {z!r}",
                              expr=exc.expr) from exc
    Xu = (fu[0].re - fu[1].re) / (2 * h)
    Yu = (fu[0].im - fu[1].im) / (2 * h)
    Xv = (fv[0].re - fv[1].re) / (2 * h)
    Yv = (fv[0].im - fv[1].im) / (2 * h)
    return Xu, Yu, Xv, Yv


def cr_residual(e: ParaExpr, z, h: float = 1e-5):
    """``max(|X_u - Y_v|, |X_v - Y_u|)`` by central differences."""
    Xu, Yu, Xv, Yv = _fd_partials(e, z, h)
    return pc._scalarize(np.maximum(np.abs(Xu - Yv), np.abs(Xv - Yu)))


def deriv_residual(e: ParaExpr, z, h: float = 1e-5, de: ParaExpr | None = None):
    """Relative gap between ``deriv(e)`` and the difference quotient ``X_u + j Y_u``."""
    Xu, Yu, _, _ = _fd_partials(e, z, h)
    d = (de if de is not None else e.deriv()).eval(z)
    gap = np.hypot(d.re - Xu, d.im - Yu)
    return pc._scalarize(gap / (1.0 + np.hypot(d.re, d.im)))


# regions ---------------------------------------------------------------
@dataclass(frozen=True)
class RegionSpec:
    """Open region: a rectangle in ``(u, v)`` cut by sign conditions on norm2.

    Each constraint ``(expr, sign)`` requires ``sign * norm2(expr(z)) > 0``.
    ``margin`` additionally drops points whose first-order distance
    ``|N| / |grad N|`` to the zero or pole set of ``N = norm2(expr)`` is
    below it.
    """

    bounds: tuple = (-1.0, 1.0, -1.0, 1.0)
    constraints: tuple = ()
    margin: float = 0.0
    anchor: ParaComplex | None = None
    name: str = ""
    _derivs: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple(float(b) for b in self.bounds))
        object.__setattr__(self, "constraints",
                           tuple((_wrap(c), int(s)) for c, s in self.constraints))
        object.__setattr__(self, "_derivs", tuple(c.deriv() for c, _ in self.constraints))

    @property
    def base(self) -> ParaComplex:
        if self.anchor is not None:
            return self.anchor
        u0, u1, v0, v1 = self.bounds
        return ParaComplex(0.5 * (u0 + u1), 0.5 * (v0 + v1))

    def satisfies_constraints(self, z):
        z = ParaComplex.coerce(z)
        ok = np.ones(z.shape, dtype=bool)
        with np.errstate(all="ignore"):
            for (c, sign), dc in zip(self.constraints, self._derivs):
                w = c.eval(z, strict=False)
                n2 = pc.norm2(w)
                good = np.isfinite(n2) & (sign * n2 > pc.TAU_INV * pc.euclid2(w))
                if self.margin > 0:
                    d = dc.eval(z, strict=False)
                    gu = 2 * (w.re * d.re - w.im * d.im)
                    gv = 2 * (w.re * d.im - w.im * d.re)
                    dist = np.abs(n2) / np.hypot(gu, gv)
                    good &= ~(dist < self.margin)
                ok &= good
        return ok if ok.shape else bool(ok)

    def in_bounds(self, z):
        z = ParaComplex.coerce(z)
        u0, u1, v0, v1 = self.bounds
        return (z.re > u0) & (z.re < u1) & (z.im > v0) & (z.im < v1)

    def contains(self, z):
        return self.in_bounds(z) & self.satisfies_constraints(z)

    def grid(self, n: int, closed: bool = False):
        """Row-major ``n x n`` grid over the bounds.

        Returns ``(points, mask)``; ``mask`` marks in-region points.  Open
        bounds use an inset grid so no node sits on the rectangle's edge.
        """
        u0, u1, v0, v1 = self.bounds
        if closed:
            u = np.linspace(u0, u1, n)
            v = np.linspace(v0, v1, n)
        else:
            du, dv = (u1 - u0) / n, (v1 - v0) / n
            u = u0 + du * (np.arange(n) + 0.5)
            v = v0 + dv * (np.arange(n) + 0.5)
        U, V = np.meshgrid(u, v, indexing="ij")
        Z = ParaComplex(U, V)
        mask = self.satisfies_constraints(Z)
        if closed:
            mask = np.asarray(mask, dtype=bool)
        else:
            mask = np.asarray(mask & self.in_bounds(Z), dtype=bool)
        return Z, mask

    def sample(self, n: int, rng=None) -> ParaComplex:
        """``n`` uniform random in-region points (rejection sampling)."""
        rng = np.random.default_rng(rng)
        u0, u1, v0, v1 = self.bounds
        got_u, got_v, have = [], [], 0
        for _ in range(200):
            U = rng.uniform(u0, u1, 4 * n)
            V = rng.uniform(v0, v1, 4 * n)
            keep = np.asarray(self.contains(ParaComplex(U, V)), dtype=bool)
            got_u.append(U[keep])
            got_v.append(V[keep])
            have += int(keep.sum())
            if have >= n:
                break
        else:
            raise DomainViolation(f"region {self.name or self.bounds} looks empty")
        return ParaComplex(np.concatenate(got_u)[:n], np.concatenate(got_v)[:n])


# null splitting ------------------------------------------------------------
@dataclass(frozen=True)
class NullSplit:
    """``e(z) = e1 f_plus(u+v) + e2 f_minus(u-v)`` on a region."""

    expr: ParaExpr
    center: NullPair
    region: RegionSpec | None = None

    def _check(self, z):
        if self.region is not None and self.region.constraints:
            if not np.all(self.region.satisfies_constraints(z)):
                raise DomainViolation("null line leaves the region", expr=self.expr)

    def f_plus(self, s):
        w = from_null(NullPair(np.asarray(s, dtype=float), self.center.minus))
        self._check(w)
        try:
            val = self.expr.eval(w)
        except (NonInvertible, NullConeArgument) as exc:
            raise DomainViolation("null line meets a singular point", expr=exc.expr) from exc
        return pc._scalarize(val.re + val.im)

    def f_minus(self, s):
        w = from_null(NullPair(self.center.plus, np.asarray(s, dtype=float)))
        self._check(w)
        try:
            val = self.expr.eval(w)
        except (NonInvertible, NullConeArgument) as exc:
            raise DomainViolation("null line meets a singular point", expr=exc.expr) from exc
        return pc._scalarize(val.re - val.im)

    def reconstruct(self, zz) -> ParaComplex:
        p = to_null(zz)
        return from_null(NullPair(self.f_plus(p.plus), self.f_minus(p.minus)))


def null_split(e: ParaExpr, region: RegionSpec) -> NullSplit:
    """Split ``e`` into its two null-line functions.

    The additive constants follow the region centre: ``f_plus`` there equals
    ``re + im`` of ``e`` and ``f_minus`` equals ``re - im``.
    """
    return NullSplit(e, to_null(region.base), region)


# line integrals ------------------------------------------------------------
def singular_guards(e: ParaExpr) -> tuple:
    """Sub-expressions whose null cone makes ``e`` singular.

    These are the divisors, logarithm arguments and bases of negative
    powers, with composition pushed through.
    """
    if isinstance(e, Compose):
        inner = singular_guards(e.inner)
        return inner + tuple(Compose(g, e.inner) for g in singular_guards(e.outer))
    own = ()
    if isinstance(e, Div):
        own = (e.b,)
    elif isinstance(e, Log):
        own = (e.a,)
    elif isinstance(e, Pow) and e.n < 0:
        own = (e.a,)
    kids = getattr(e, "children", ())
    return sum((singular_guards(c) for c in kids), ()) + own


_GUARD_SAMPLES = 513


def _crosses_singular(exprs, a, b, nd):
    """True where the segment from ``a`` to ``b`` meets a guard's null cone."""
    guards = {g for e in exprs for g in singular_guards(e)}
    if not guards:
        return False
    t = np.linspace(0.0, 1.0, _GUARD_SAMPLES).reshape((-1,) + (1,) * nd)
    zz = ParaComplex(a.re + t * (b.re - a.re), a.im + t * (b.im - a.im))
    with np.errstate(all="ignore"):
        for g in guards:
            n2 = pc.norm2(g.eval(zz, strict=False))
            s = np.sign(n2)
            if np.any(~np.isfinite(n2)) or np.any(s != s[:1]):
                return True
    return False


def _segment(exprs, a: ParaComplex, b: ParaComplex, region, tol):
    d = b - a
    shape = np.broadcast(a.re, a.im, b.re, b.im).shape
    nd = len(shape)
    if _crosses_singular(exprs, a, b, nd):
        raise DomainViolation("integration path crosses a singular locus")

    def integrand(tau):
        t = tau.reshape((-1,) + (1,) * nd)
        zz = ParaComplex(a.re + t * d.re, a.im + t * d.im)
        if region is not None and not np.all(region.contains(zz)):
            raise DomainViolation("integration path leaves the region")
        rows = []
        for e in exprs:
            try:
                val = e.eval(zz) * d
            except (NonInvertible, NullConeArgument) as exc:
                raise DomainViolation("integration path touches an excluded locus",
                                      expr=exc.expr) from exc
            re_, im_ = np.broadcast_arrays(val.re, val.im)
            rows.append(np.stack([re_, im_], axis=1))
        return np.stack(rows, axis=1)  # (N, k, 2, *shape)

    try:
        return integrate_unit(integrand, tol=tol)
    except QuadratureError as exc:
        # finite at every node yet not converging: the segment crosses a pole line
        raise DomainViolation("integration path crosses a singular locus") from exc


def _polyline(exprs, vertices, region, tol):
    total = 0.0
    for a, b in zip(vertices[:-1], vertices[1:]):
        total = total + _segment(exprs, a, b, region, tol)
    return total


def _null_corner(z0, z1):
    p0, p1 = to_null(z0), to_null(z1)
    return from_null(NullPair(p1.plus, p0.minus))


def line_integral(e, z0, z1, path=None, region: RegionSpec | None = None,
                  tol: float = 1e-10, check: bool = False, check_tol: float = 1e-8):
    """``integral of e(z) dz`` from ``z0`` to ``z1`` along a polyline.

    ``e`` may be one expression or a sequence (integrated on shared nodes).
    ``z1`` may be array-valued.  ``path`` is ``None`` (straight segment),
    ``"null"`` (first along ``u+v``, then along ``u-v``) or a list of
    intermediate vertices.  With ``check=True`` the result is compared with
    the other of the straight and null paths; a mismatch beyond
    ``check_tol`` raises :class:`PathDependent`.
    """
    single = isinstance(e, ParaExpr)
    exprs = [e] if single else [_wrap(x) for x in e]
    z0 = ParaComplex.coerce(z0)
    z1 = ParaComplex.coerce(z1)

    def vertices(kind):
        if kind is None:
            return [z0, z1]
        if kind == "null":
            return [z0, _null_corner(z0, z1), z1]
        return [z0, *[ParaComplex.coerce(p) for p in kind], z1]

    res = _polyline(exprs, vertices(path), region, tol)
    if check:
        alt = "null" if path is None else None
        other = _polyline(exprs, vertices(alt), region, tol)
        gap = np.max(np.abs(res - other))
        if gap > check_tol * max(1.0, float(np.max(np.abs(res)))):
            raise PathDependent(f"paths disagree by {gap:.3e}")
    out = [ParaComplex(res[i, 0], res[i, 1]) for i in range(len(exprs))]
    return out[0] if single else out


# closed-form antiderivatives -------------------------------------------------
def as_laurent(e: ParaExpr):
    """Coefficients ``{power: ParaComplex}`` if ``e`` is a Laurent polynomial, else None."""
    if isinstance(e, Var):
        return {1: ParaComplex(1.0)}
    if isinstance(e, Const):
        return {0: e.value}
    if isinstance(e, (Add, Sub)):
        a, b = as_laurent(e.a), as_laurent(e.b)
        if a is None or b is None:
            return None
        sign = 1.0 if isinstance(e, Add) else -1.0
        out = dict(a)
        for k, c in b.items():
            out[k] = out.get(k, ParaComplex(0.0)) + sign * c
        return out
    if isinstance(e, Neg):
        a = as_laurent(e.a)
        return None if a is None else {k: -c for k, c in a.items()}
    if isinstance(e, Mul):
        a, b = as_laurent(e.a), as_laurent(e.b)
        if a is None or b is None:
            return None
        return _lmul(a, b)
    if isinstance(e, Pow):
        a = as_laurent(e.a)
        if a is None:
            return None
        if e.n >= 0:
            out = {0: ParaComplex(1.0)}
            for _ in range(e.n):
                out = _lmul(out, a)
            return out
        inv = _linv(a)
        if inv is None:
            return None
        out = {0: ParaComplex(1.0)}
        for _ in range(-e.n):
            out = _lmul(out, inv)
        return out
    if isinstance(e, Div):
        a, b = as_laurent(e.a), as_laurent(e.b)
        if a is None or b is None:
            return None
        inv = _linv(b)
        return None if inv is None else _lmul(a, inv)
    return None


def _lmul(a, b):
    out = {}
    for i, ci in a.items():
        for k, ck in b.items():
            out[i + k] = out.get(i + k, ParaComplex(0.0)) + ci * ck
    return out


def _prune(a):
    return {k: c for k, c in a.items() if not (c.re == 0 and c.im == 0)}


def _linv(a):
    a = _prune(a)
    if len(a) != 1:
        return None
    (k, c), = a.items()
    if pc.on_null_cone(c):
        return None
    return {-k: pc.divide(1.0, c)}


def _laurent_expr(coeffs) -> ParaExpr:
    out = None
    for k in sorted(coeffs):
        c = coeffs[k]
        if c.re == 0 and c.im == 0:
            continue
        term = ONE if k == 0 else (z if k == 1 else Pow(z, k))
        term = _mul(Const(c), term)
        out = term if out is None else Add(out, term)
    return ZERO if out is None else out


def _real_unit(c: ParaComplex):
    if c.im == 0 and abs(abs(c.re) - 1.0) < 1e-15:
        return int(np.sign(c.re))
    return None


def antiderivative(e: ParaExpr) -> ParaExpr:
    """Closed-form primitive from a small table.

    Handles sums and constant multiples of Laurent polynomials,
    ``c/(z + a)``, ``(c1 z + c0)/(z**2 + 1)`` and ``(c1 z + c0)/(z**2 - 1)``.
    Raises :class:`NoClosedForm` otherwise.
    """
    lau = as_laurent(e)
    if lau is not None:
        lau = _prune(lau)
        poly = {k + 1: pc.divide(c, float(k + 1)) for k, c in lau.items() if k != -1}
        out = _laurent_expr(poly)
        if -1 in lau:
            out = _add(out, _mul(Const(lau[-1]), Log(z)))
        return out
    if isinstance(e, Add):
        return _add(antiderivative(e.a), antiderivative(e.b))
    if isinstance(e, Sub):
        return _sub(antiderivative(e.a), antiderivative(e.b))
    if isinstance(e, Neg):
        return _neg(antiderivative(e.a))
    if isinstance(e, Mul):
        for c, x in ((e.a, e.b), (e.b, e.a)):
            lc = as_laurent(c)
            if lc is not None and set(_prune(lc)) <= {0}:
                return _mul(Const(lc.get(0, ParaComplex(0.0))), antiderivative(x))
        raise NoClosedForm(f"no table entry for {dumps(e)}", expr=e)
    if isinstance(e, Div):
        num, den = as_laurent(e.a), as_laurent(e.b)
        if num is not None and den is not None:
            num, den = _prune(num), _prune(den)
            if set(num) <= {0, 1} and set(den) <= {0, 1, 2} and min(den, default=0) >= 0:
                return _rational_table(num, den, e)
    raise NoClosedForm(f"no table entry for {dumps(e)}", expr=e)


def _rational_table(num, den, e):
    zero = ParaComplex(0.0)
    if max(den) == 1 and set(num) <= {0}:
        b1 = den[1]
        if pc.on_null_cone(b1):
            raise NoClosedForm("degenerate linear denominator", expr=e)
        c = pc.divide(num.get(0, zero), b1)
        shift = pc.divide(den.get(0, zero), b1)
        return _mul(Const(c), Log(Add(z, Const(shift))))
    if max(den) == 2 and 1 not in den and 0 in den:
        b2 = den[2]
        if pc.on_null_cone(b2):
            raise NoClosedForm("degenerate quadratic denominator", expr=e)
        q = _real_unit(pc.divide(den[0], b2))
        c1 = pc.divide(num.get(1, zero), b2)
        c0 = pc.divide(num.get(0, zero), b2)
        if q is None:
            raise NoClosedForm("quadratic denominator outside the table", expr=e)
        out = ZERO
        if c1 != zero:
            out = _add(out, _mul(Const(0.5 * c1), Log(Add(Pow(z, 2), const(q)))))
        if c0 != zero:
            if q == 1:
                out = _add(out, _mul(Const(c0), Arctan(z)))
            else:
                out = _add(out, _mul(Const(0.5 * c0),
                                     Sub(Log(Sub(z, ONE)), Log(Add(z, ONE)))))
        return out
    raise NoClosedForm(f"no table entry for {dumps(e)}", expr=e)

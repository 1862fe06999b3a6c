"""Named surfaces: Weierstrass data, parametrized patches, implicit sets, entire graphs.

Scherk-type patches are stored at scale 2 and catenoid-type patches at
scale 1/2, the factors under which the raw (un-normalized) immersions land
exactly on the implicit sets.  Implicit sets given as a union of two
components carry both the printed component residual and the smooth
squared residual of the whole set; membership checks use the squared one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import UnknownEntry
from .paracomplex import Branch, ParaComplex, polar_grid
from .paraholo import J, RegionSpec, antiderivative, arctan, const, dumps, log, z
from .weierstrass import Formula, Point3, SurfacePatch, WeierstrassData


@dataclass(frozen=True)
class ImplicitSurface:
    name: str
    residual: Callable
    formula: str
    squared: Callable | None = None
    squared_formula: str = ""
    components: str = ""
    causal: str = ""

    def __call__(self, t, x, y):
        """Residual of the full zero set (squared form when there is one)."""
        f = self.squared if self.squared is not None else self.residual
        return f(t, x, y)


@dataclass(frozen=True)
class EntireGraph:
    """Graph over a space-like plane (``"S"``) or a light-like plane (``"L"``).

    Type S: ``(x, y) -> (f(x, y), x, y)``.
    Type L: coordinates ``(x, eta)`` with ``eta = t + y`` and
    ``zeta = t - y = f(x, eta)``.
    ``partials`` returns ``(f_a, f_b, f_aa, f_ab, f_bb)``.
    """

    name: str
    plane: str
    f: Callable
    partials: Callable | None = None
    formula: str = ""

    def embed(self, a, b) -> Point3:
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        val = self.f(a, b)
        if self.plane == "S":
            return Point3(val, a, b)
        return from_lightlike(a, b, val)


def graph_eval(g: EntireGraph, a, b) -> Point3:
    return g.embed(a, b)


def lightlike_coords(p) -> tuple:
    """``(t, x, y) -> (x, eta, zeta)`` with ``eta = t + y``, ``zeta = t - y``."""
    t, x, y = p
    return x, t + y, t - y


def from_lightlike(x, eta, zeta) -> Point3:
    return Point3(0.5 * (eta + zeta), x, 0.5 * (eta - zeta))


def affine_graph(a: float, b: float, c: float = 0.0) -> EntireGraph:
    return EntireGraph(
        name=f"plane({a},{b},{c})", plane="S",
        f=lambda x, y: a * x + b * y + c + 0 * x * y,
        partials=lambda x, y: (a + 0 * x, b + 0 * x, 0 * x, 0 * x, 0 * x),
        formula=f"{a}*x + {b}*y + {c}",
    )


def _arcsinh_partials(w, wx):
    # w = e^y h(x) with h'' = -h: w_y = w, w_xx = -w, w_xy = w_x, w_yy = w
    r = np.sqrt(1 + w * w)
    r3 = r ** 3
    fx, fy = wx / r, w / r
    fxx = -w / r - w * wx * wx / r3
    fxy = wx / r - w * wx * w / r3
    fyy = w / r - w * w * w / r3
    return fx, fy, fxx, fxy, fyy


def _s1p_f(x, y):
    return np.arcsinh(np.exp(y) * np.cos(x))


def _s1p_partials(x, y):
    e = np.exp(y)
    return _arcsinh_partials(e * np.cos(x), -e * np.sin(x))


def _k4_f(x, y):
    return np.arcsinh(-np.exp(y) * np.sin(x))


def _k4_partials(x, y):
    e = np.exp(y)
    return _arcsinh_partials(-e * np.sin(x), -e * np.cos(x))


def _c2_partials(x, y):
    th = np.tanh(y)
    sech2 = 1.0 / np.cosh(y) ** 2
    return th + 0 * x, x * sech2, 0 * x * y, sech2 + 0 * x, -2 * x * sech2 * th


def _e4_partials(x, eta):
    return eta + 0 * x, x - eta ** 2 / 2, 0 * x * eta, 1 + 0 * x * eta, -eta + 0 * x


GRAPHS = {
    "graph_S1p": EntireGraph("graph_S1p", "S", _s1p_f, _s1p_partials, "asinh(exp(y)*cos(x))"),
    "graph_K4": EntireGraph("graph_K4", "S", _k4_f, _k4_partials, "asinh(-exp(y)*sin(x))"),
    "graph_C2": EntireGraph("graph_C2", "S", lambda x, y: x * np.tanh(y), _c2_partials,
                            "x*tanh(y)"),
    "graph_E4": EntireGraph("graph_E4", "L", lambda x, eta: x * eta - eta ** 3 / 6,
                            _e4_partials, "x*eta - eta**3/6"),
}


# Weierstrass data ------------------------------------------------------------
A = (z + 1) / (z - 1)

ENNEPER = WeierstrassData(z, const(1.0), name="enneper")
PLANE = WeierstrassData(const(0.0), const(1.0), name="plane")

# displayed partial-fraction forms of the Scherk integrands
SCHERK_FIRST_PF = (
    0.5 * (1 / (z + 1) - 1 / (z - 1)),
    0.5 * (-2 * J / (z ** 2 + 1)),
    0.5 * (2 * z / (z ** 2 + 1) - 2 * z / (z ** 2 - 1)),
)
SCHERK_THIRD_PF = (
    0.5 * (1 / (z + 1) - 1 / (z - 1)),
    0.5 * (2 * J * z / (z ** 2 + 1) - 2 * J * z / (z ** 2 - 1)),
    0.5 * (2 / (z ** 2 + 1)),
)
# printed closed forms: F1 + jF2 and F3 + jF4
SCHERK_FIRST_CLOSED = (0.5 * log(A), -J * arctan(z), 0.5 * log((z ** 2 + 1) / (z ** 2 - 1)))
SCHERK_THIRD_CLOSED = (0.5 * log(A), 0.5 * J * log((z ** 2 + 1) / (z ** 2 - 1)), arctan(z))

SCHERK = WeierstrassData(
    -z, 1 / (z ** 4 - 1), name="scherk",
    primitives={
        "first": tuple(antiderivative(c) for c in SCHERK_FIRST_PF),
        "third": tuple(antiderivative(c) for c in SCHERK_THIRD_PF),
    },
)
CATENOID = WeierstrassData(z, -1 / z ** 2, name="catenoid")

_BOX2 = (-2.0, 2.0, -2.0, 2.0)
REGIONS = {
    "enneper": {"full": RegionSpec((-3.0, 3.0, -3.0, 3.0), name="full")},
    "plane": {"full": RegionSpec((-3.0, 3.0, -3.0, 3.0), name="full")},
    "scherk": {
        "dplus": RegionSpec(_BOX2, ((A, 1),), margin=0.05,
                            anchor=ParaComplex(0.0), name="dplus"),
        "dminus": RegionSpec(_BOX2, ((A, -1),), margin=0.05,
                             anchor=ParaComplex(1.0, -1.0), name="dminus"),
    },
    "catenoid": {
        "pos": RegionSpec((-3.0, 3.0, -3.0, 3.0), ((z, 1),), margin=0.05,
                          anchor=ParaComplex(1.0), name="pos"),
        "neg": RegionSpec((-3.0, 3.0, -3.0, 3.0), ((z, -1),), margin=0.05,
                          anchor=ParaComplex(0.0, 1.0), name="neg"),
    },
}
DATA = {"enneper": ENNEPER, "plane": PLANE, "scherk": SCHERK, "catenoid": CATENOID}


def data_in_region(data_name: str, region_name: str | None = None) -> WeierstrassData:
    if data_name not in DATA:
        raise UnknownEntry(f"unknown Weierstrass data {data_name!r}")
    regions = REGIONS[data_name]
    name = region_name or next(iter(regions))
    if name not in regions:
        raise UnknownEntry(f"unknown region {name!r} for {data_name}; "
                           f"choose from {sorted(regions)}")
    return DATA[data_name].with_region(regions[name])


# implicit sets -----------------------------------------------------------------
ch, sh, cs, sn, ex, th = np.cosh, np.sinh, np.cos, np.sin, np.exp, np.tanh


def _imp(name, residual, formula, squared=None, squared_formula="", components="", causal=""):
    return ImplicitSurface(name, residual, formula, squared, squared_formula, components, causal)


IMPLICIT = {
    "enneper_E3": _imp("E3", lambda t, x, y: t ** 2 - y ** 2 - (t + y) ** 4 / 12 - x ** 2,
                       "t**2 - y**2 - (t + y)**4/12 - x**2",
                       causal="contains the light-like line (t, 0, -t); no space-like points"),
    "enneper_E4": _imp("E4", lambda t, x, y: (t - y) + (t + y) ** 3 / 6 - x * (t + y),
                       "(t - y) + (t + y)**3/6 - x*(t + y)",
                       components="graph zeta = x*eta - eta**3/6 over the light-like x-eta plane",
                       causal="mixed type"),
    "scherk_S1": _imp("S1", lambda t, x, y: ch(t) - ex(y) * cs(x), "cosh(t) - exp(y)*cos(x)",
                      lambda t, x, y: ch(t) ** 2 - ex(2 * y) * cs(x) ** 2,
                      "cosh(t)**2 - exp(2*y)*cos(x)**2",
                      "cosh t = +-e^y cos x (two congruent components)",
                      "time-like, no singular points"),
    "scherk_S1p": _imp("S1'", lambda t, x, y: sh(t) - ex(y) * cs(x), "sinh(t) - exp(y)*cos(x)",
                       lambda t, x, y: sh(t) ** 2 - ex(2 * y) * cs(x) ** 2,
                       "sinh(t)**2 - exp(2*y)*cos(x)**2",
                       "sinh t = +-e^y cos x; the + component is the entire graph t = asinh(e^y cos x)",
                       "mixed type"),
    "scherk_S2": _imp("S2", lambda t, x, y: sh(y) - sh(t) * sn(x), "sinh(y) - sinh(t)*sin(x)",
                      lambda t, x, y: sh(y) ** 2 - sh(t) ** 2 * sn(x) ** 2,
                      "sinh(y)**2 - sinh(t)**2*sin(x)**2",
                      "sinh y = +-sinh t sin x",
                      "no space-like points; contains light-like lines (t, n pi, +-t)"),
    "scherk_S2p": _imp("S2'", lambda t, x, y: ch(y) - ch(t) * sn(x), "cosh(y) - cosh(t)*sin(x)",
                       lambda t, x, y: ch(y) ** 2 - ch(t) ** 2 * sn(x) ** 2,
                       "cosh(y)**2 - cosh(t)**2*sin(x)**2",
                       "cosh y = +-cosh t sin x",
                       "no space-like points; contains light-like lines (t, pi/2, +-t)"),
    "scherk_S3": _imp("S3", lambda t, x, y: ch(t) * cs(y) - ch(x), "cosh(t)*cos(y) - cosh(x)",
                      lambda t, x, y: ch(t) ** 2 * cs(y) ** 2 - ch(x) ** 2,
                      "cosh(t)**2*cos(y)**2 - cosh(x)**2",
                      "cosh t cos y = +-cosh x", "congruent to S2'"),
    "scherk_S3p": _imp("S3'", lambda t, x, y: sh(t) * cs(y) - sh(x), "sinh(t)*cos(y) - sinh(x)",
                       lambda t, x, y: sh(t) ** 2 * cs(y) ** 2 - sh(x) ** 2,
                       "sinh(t)**2*cos(y)**2 - sinh(x)**2",
                       "sinh t cos y = +-sinh x", "congruent to S2"),
    "scherk_S4": _imp("S4", lambda t, x, y: sh(t) - ex(x) * sn(y), "sinh(t) - exp(x)*sin(y)",
                      lambda t, x, y: sh(t) ** 2 - ex(2 * x) * sn(y) ** 2,
                      "sinh(t)**2 - exp(2*x)*sin(y)**2",
                      "sinh t = +-e^x sin y", "congruent to S1'"),
    "scherk_S4p": _imp("S4'", lambda t, x, y: ch(t) - ex(x) * sn(y), "cosh(t) - exp(x)*sin(y)",
                       lambda t, x, y: ch(t) ** 2 - ex(2 * x) * sn(y) ** 2,
                       "cosh(t)**2 - exp(2*x)*sin(y)**2",
                       "cosh t = +-e^x sin y", "congruent to S1"),
    "catenoid_C1": _imp("C1", lambda t, x, y: t ** 2 - x ** 2 - sh(y) ** 2,
                        "t**2 - x**2 - sinh(y)**2", causal="no space-like points"),
    "catenoid_C2": _imp("C2", lambda t, x, y: t - x * th(y), "t - x*tanh(y)",
                        lambda t, x, y: t ** 2 - x ** 2 * th(y) ** 2, "t**2 - x**2*tanh(y)**2",
                        "t = +-x tanh y; the sign -1 polar component gives t = x tanh y",
                        "mixed-type entire graph over a space-like plane"),
    "catenoid_C1p": _imp("C1'", lambda t, x, y: x ** 2 - t ** 2 - ch(y) ** 2,
                         "x**2 - t**2 - cosh(y)**2", causal="no space-like points"),
    "catenoid_C2p": _imp("C2'", lambda t, x, y: t * th(y) - x, "t*tanh(y) - x",
                         lambda t, x, y: t ** 2 * th(y) ** 2 - x ** 2, "t**2*tanh(y)**2 - x**2",
                         "t tanh y = +-x; both polar components give t tanh y = -x",
                         "no space-like points"),
    "kobayashi_K1": _imp("K1", lambda t, x, y: ex(t) * ch(x) - ch(y), "exp(t)*cosh(x) - cosh(y)",
                         causal="mixed-type entire graph, Kobayashi surface of order 2"),
    "kobayashi_K2": _imp("K2", lambda t, x, y: sn(t) - sn(x) * sn(y), "sin(t) - sin(x)*sin(y)",
                         causal="triply periodic with cone-like singular points"),
    "kobayashi_K3": _imp("K3", lambda t, x, y: cs(t) * ch(x) - cs(y), "cos(t)*cosh(x) - cos(y)",
                         causal="no time-like points"),
    "kobayashi_K4": _imp("K4", lambda t, x, y: sh(t) + ex(y) * sn(x), "sinh(t) + exp(y)*sin(x)",
                         causal="mixed-type entire graph, congruent to S4"),
}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    tags: tuple = ()
    notes: str = ""
    data: WeierstrassData | None = None
    formula: Formula | None = None
    implicit: ImplicitSurface | None = None
    graph: EntireGraph | None = None
    scale: float = 1.0
    sampler: str = "grid"
    window: tuple = (-3.0, 3.0, -3.0, 3.0)
    extra: dict = field(default_factory=dict)

    @property
    def patch(self) -> SurfacePatch | None:
        if self.data is None:
            return None
        return SurfacePatch(self.data, self.formula)

    def parameters(self, n: int = 50) -> ParaComplex:
        """In-region parameter values used to sample the patch."""
        if self.sampler.startswith("polar"):
            branch = Branch.TIMELIKE if self.sampler == "polar-pos" else Branch.SPACELIKE
            s = np.linspace(-1.5, 1.5, n)
            S, T = np.meshgrid(s, s, indexing="ij")
            zs = [polar_grid(sign, S.ravel(), T.ravel(), branch) for sign in (1, -1)]
            Z = ParaComplex(np.concatenate([w.re for w in zs]),
                            np.concatenate([w.im for w in zs]))
            return Z[self.data.region.contains(Z)]
        Z, mask = self.data.region.grid(n)
        return Z[mask]

    def sample_points(self, n: int = 50) -> np.ndarray:
        """Points of the surface as a ``(3, N)`` array."""
        if self.graph is not None:
            a0, a1, b0, b1 = self.window
            A_, B_ = np.meshgrid(np.linspace(a0, a1, n), np.linspace(b0, b1, n), indexing="ij")
            return np.array(self.graph.embed(A_.ravel(), B_.ravel()))
        if self.data is None:
            raise ValueError(f"{self.name} has no parametrization")
        pts = self.patch(self.parameters(n), normalized=False)
        return self.scale * np.array(pts)

    def to_dict(self) -> dict:
        out = {"name": self.name, "tags": list(self.tags), "notes": self.notes}
        if self.data is not None:
            d = self.data
            out["data"] = {"name": d.name, "g": dumps(d.g), "omega": dumps(d.omega),
                           "base": [d.base.re, d.base.im]}
            out["formula"] = self.formula.value
            out["scale"] = self.scale
            if d.region is not None:
                r = d.region
                out["region"] = {"name": r.name, "bounds": list(r.bounds),
                                 "constraints": [{"expr": dumps(c), "sign": s}
                                                 for c, s in r.constraints],
                                 "margin": r.margin}
        if self.implicit is not None:
            imp = self.implicit
            out["implicit"] = {"name": imp.name, "formula": imp.formula,
                               "squared_formula": imp.squared_formula,
                               "components": imp.components, "causal": imp.causal}
        if self.graph is not None:
            out["graph"] = {"plane": self.graph.plane, "f": self.graph.formula,
                            "window": list(self.window)}
        out.update(self.extra)
        return out


def _scherk(k, primed):
    formula = Formula(f"F{k}")
    region = "dminus" if primed else "dplus"
    key = f"scherk_S{k}{'p' if primed else ''}"
    return CatalogEntry(
        key, ("scherk", "patch", "implicit", formula.value, region),
        f"2{formula.value} of g=-z, omega=1/(z^4-1) on D{'-' if primed else '+'} lies in this set",
        data_in_region("scherk", region), formula, IMPLICIT[key], scale=2.0,
    )


def _catenoid(k, primed):
    formula = Formula(f"F{k}")
    region = "neg" if primed else "pos"
    key = f"catenoid_C{k}{'p' if primed else ''}"
    return CatalogEntry(
        key, ("catenoid", "patch", "implicit", formula.value, region),
        f"{formula.value}/2 of g=z, omega=-1/z^2 on norm2(z) {'<' if primed else '>'} 0, "
        "sampled through the polar form",
        data_in_region("catenoid", region), formula, IMPLICIT[key], scale=0.5,
        sampler="polar-neg" if primed else "polar-pos",
    )


def _build():
    entries = [
        CatalogEntry("enneper_E3", ("enneper", "patch", "implicit", "F3"),
                     "F3 of g=z, omega=1 lies in E3", data_in_region("enneper"),
                     Formula.F3, IMPLICIT["enneper_E3"]),
        CatalogEntry("enneper_E4", ("enneper", "patch", "implicit", "F4", "entire", "type-L"),
                     "F4 of g=z, omega=1 extends to the ruled surface E4, an entire graph "
                     "over a light-like plane", data_in_region("enneper"),
                     Formula.F4, IMPLICIT["enneper_E4"]),
        CatalogEntry("enneper_timelike_F1", ("enneper", "patch", "F1"),
                     "time-like Enneper surface; singular along u^2 - v^2 = 1",
                     data_in_region("enneper"), Formula.F1),
        CatalogEntry("enneper_timelike_F2", ("enneper", "patch", "F2"),
                     "conjugate of the time-like Enneper surface; singular along u^2 - v^2 = 1",
                     data_in_region("enneper"), Formula.F2),
    ]
    for k in range(1, 5):
        entries += [_scherk(k, False), _scherk(k, True)]
    entries += [_catenoid(1, False), _catenoid(2, False), _catenoid(1, True), _catenoid(2, True)]
    for k in range(1, 5):
        key = f"kobayashi_K{k}"
        entries.append(CatalogEntry(key, ("kobayashi", "implicit"),
                                    "from the space-like formulas with the Scherk data "
                                    "(implicit form only)", implicit=IMPLICIT[key]))
    entries += [
        CatalogEntry("graph_S1p", ("graph", "entire", "type-S", "mixed"),
                     "entire graph t = asinh(e^y cos x) of mixed type",
                     implicit=IMPLICIT["scherk_S1p"], graph=GRAPHS["graph_S1p"],
                     window=(-2 * np.pi, 2 * np.pi, -3.0, 3.0)),
        CatalogEntry("graph_E4", ("graph", "entire", "type-L", "mixed"),
                     "zeta = x eta - eta^3/6 over the light-like x-eta plane",
                     implicit=IMPLICIT["enneper_E4"], graph=GRAPHS["graph_E4"]),
        CatalogEntry("graph_C2", ("graph", "entire", "type-S", "mixed"),
                     "entire graph t = x tanh y", implicit=IMPLICIT["catenoid_C2"],
                     graph=GRAPHS["graph_C2"], window=(-5.0, 5.0, -5.0, 5.0)),
        CatalogEntry("graph_K4", ("graph", "entire", "type-S", "mixed"),
                     "entire graph t = asinh(-e^y sin x)", implicit=IMPLICIT["kobayashi_K4"],
                     graph=GRAPHS["graph_K4"], window=(-2 * np.pi, 2 * np.pi, -3.0, 3.0)),
    ]
    return {e.name: e for e in entries}


_ENTRIES = _build()

#: non-congruent classes among the eight Scherk-type surfaces (metadata only)
NON_CONGRUENT_SCHERK = ("hat S1 = {cosh t = e^y cos x, |x| < pi/2}", "S1' = {sinh t = e^y cos x}",
                        "S2 = {sinh y = sinh t sin x}", "hat S2' = {cosh y = cosh t sin x, 0 < x < pi}")


def get(name: str) -> CatalogEntry:
    try:
        return _ENTRIES[name]
    except KeyError:
        raise UnknownEntry(f"unknown catalog entry {name!r}") from None


def names() -> list:
    return list(_ENTRIES)


def list_entries() -> list:
    return [{"name": e.name, "tags": list(e.tags)} for e in _ENTRIES.values()]


def dump() -> dict:
    """The whole catalog as a JSON-ready document."""
    return {"entries": [e.to_dict() for e in _ENTRIES.values()],
            "non_congruent_scherk_classes": list(NON_CONGRUENT_SCHERK)}

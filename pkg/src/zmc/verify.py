"""Numerical checks: ZMC residuals, causal labels, component census, membership,
singular loci, congruences and umbilics.

All grids here are closed (``np.linspace`` including both ends) and row-major
with the first coordinate varying slowest.
"""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import ndimage, optimize
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from . import paracomplex as pc
from .catalog import EntireGraph, ImplicitSurface
from .paracomplex import ParaComplex, tilde_extend
from .paraholo import RegionSpec, arctan, deriv, z as Z
from .weierstrass import Formula, WeierstrassData, conformal_factor, first_fundamental_form_fd

TAU_LIGHT = 1e-9


def _py(x):
    """JSON-friendly python scalars and lists (NaN and inf become None)."""
    if isinstance(x, dict):
        return {k: _py(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_py(v) for v in x]
    if isinstance(x, np.ndarray):
        return _py(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x) if np.isfinite(x) else None
    return x


@dataclass
class Report:
    """Outcome of one check in the common report schema."""

    check: str
    passed: bool
    tol: float | None = None
    max_residual: float | None = None
    argmax_location: list | None = None
    window: list | None = None
    grid: int | None = None
    counts: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return _py(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# causal classification -------------------------------------------------------
class Causal(enum.IntEnum):
    LIGHTLIKE = 0
    SPACELIKE = 1
    TIMELIKE = 2


@dataclass(frozen=True)
class CausalLabel:
    kind: np.ndarray | Causal
    discriminant: np.ndarray | float


def fd_partials(f, a, b, h: float = 1e-4):
    """Central-difference ``(f_a, f_b, f_aa, f_ab, f_bb)``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    f0 = f(a, b)
    fpa, fma, fpb, fmb = f(a + h, b), f(a - h, b), f(a, b + h), f(a, b - h)
    fab = (f(a + h, b + h) - f(a + h, b - h) - f(a - h, b + h) + f(a - h, b - h)) / (4 * h * h)
    return ((fpa - fma) / (2 * h), (fpb - fmb) / (2 * h),
            (fpa - 2 * f0 + fma) / h ** 2, fab, (fpb - 2 * f0 + fmb) / h ** 2)


def graph_partials(g: EntireGraph, a, b, mode: str = "analytic", h: float = 1e-4):
    if mode == "analytic" and g.partials is not None:
        return g.partials(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    if mode == "analytic":
        raise ValueError(f"{g.name} has no registered analytic partials")
    return fd_partials(g.f, a, b, h)


def discriminant(g: EntireGraph, a, b, mode: str = "analytic"):
    """Determinant of the induced metric in graph coordinates, with a size scale.

    Type S: ``1 - f_x^2 - f_y^2``.  Type L (``zeta = f(x, eta)``): the metric
    is ``dx^2 - zeta_x dx deta - zeta_eta deta^2`` with determinant
    ``-zeta_eta - zeta_x^2/4``.  Positive means space-like.
    """
    if mode == "analytic" and g.partials is None:
        mode = "fd"
    fa, fb, *_ = graph_partials(g, a, b, mode)
    if g.plane == "S":
        return 1.0 - fa ** 2 - fb ** 2, 1.0 + fa ** 2 + fb ** 2
    return -fb - fa ** 2 / 4, 1.0 + np.abs(fb) + fa ** 2 / 4


def _label(disc, scale, tau):
    kind = np.where(disc > 0, Causal.SPACELIKE, Causal.TIMELIKE)
    kind = np.where(np.abs(disc) <= tau * scale, Causal.LIGHTLIKE, kind)
    return kind.astype(np.uint8)


def causal_classify(g: EntireGraph, a, b, tau_light: float = TAU_LIGHT) -> CausalLabel:
    disc, scale = discriminant(g, a, b)
    kind = _label(disc, scale, tau_light)
    if np.ndim(kind) == 0:
        return CausalLabel(Causal(int(kind)), float(disc))
    return CausalLabel(kind, disc)


def classify_patch(patch, z, h: float = 1e-4, tau_light: float = TAU_LIGHT) -> CausalLabel:
    """Label patch points by the sign of ``EG - F^2`` of the FD first fundamental form.

    A negative determinant means a time-like tangent plane.
    """
    E, F, G = first_fundamental_form_fd(patch, z, h)
    det = E * G - F * F
    scale = E * E + 2 * F * F + G * G
    kind = _label(det, scale, tau_light)
    if np.ndim(kind) == 0:
        return CausalLabel(Causal(int(kind)), float(det))
    return CausalLabel(kind, det)


# ZMC residual ------------------------------------------------------------------
def zmc_residual(g: EntireGraph, x, y, mode: str = "analytic", h: float = 1e-4):
    """``(1 - f_y^2) f_xx + 2 f_x f_y f_xy + (1 - f_x^2) f_yy`` for a type-S graph."""
    if g.plane != "S":
        raise ValueError("zmc_residual is defined for graphs over a space-like plane")
    fx, fy, fxx, fxy, fyy = graph_partials(g, x, y, mode, h)
    return (1 - fy ** 2) * fxx + 2 * fx * fy * fxy + (1 - fx ** 2) * fyy


def _grid(window, n):
    a0, a1, b0, b1 = window
    return np.linspace(a0, a1, n), np.linspace(b0, b1, n)


# component census --------------------------------------------------------------
@dataclass
class CensusReport:
    window: tuple
    grid: int
    tol: float
    spacelike_components: int
    timelike_components: int
    lightlike_cells: int
    bounding_boxes: dict
    naive_counts: dict
    refine: int

    @property
    def counts(self) -> dict:
        return {"spacelike_components": self.spacelike_components,
                "timelike_components": self.timelike_components,
                "lightlike_cells": self.lightlike_cells}

    def to_dict(self) -> dict:
        return _py({"check": "census", "window": list(self.window), "grid": self.grid,
                    "tol": self.tol, "counts": self.counts, "max_residual": None,
                    "argmax_location": None,
                    "details": {"bounding_boxes": self.bounding_boxes,
                                "naive_counts": self.naive_counts,
                                "edge_samples": self.refine}})


def _edge_ok(g, a_lo, b_lo, a_hi, b_hi, sign, refine, tau):
    """True where the discriminant keeps ``sign`` at interior samples of each edge."""
    ok = np.ones(a_lo.shape, dtype=bool)
    for k in range(1, refine):
        s = k / refine
        d, scale = discriminant(g, a_lo + s * (a_hi - a_lo), b_lo + s * (b_hi - b_lo))
        ok &= np.sign(d) * sign > 0
        ok &= np.abs(d) > tau * scale
    return ok


def _components(labels, h_edges, v_edges, kind):
    n_a, n_b = labels.shape
    idx = np.arange(n_a * n_b).reshape(n_a, n_b)
    rows, cols = [], []
    hm = h_edges & (labels[:-1] == kind) & (labels[1:] == kind)
    vm = v_edges & (labels[:, :-1] == kind) & (labels[:, 1:] == kind)
    rows += [idx[:-1][hm], idx[:, :-1][vm]]
    cols += [idx[1:][hm], idx[:, 1:][vm]]
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    graph = coo_matrix((np.ones(r.size), (r, c)), shape=(idx.size, idx.size))
    _, comp = connected_components(graph, directed=False)
    mask = (labels == kind).ravel()
    uniq = np.unique(comp[mask])
    return comp.reshape(n_a, n_b), uniq


def component_census(g: EntireGraph, window, n: int, tau_light: float = TAU_LIGHT,
                     refine: int = 32) -> CensusReport:
    """Count connected space-like and time-like components on an ``n x n`` grid.

    Nodes are classified by the sign of the metric discriminant.  Two
    4-neighbours are joined only if the discriminant keeps its sign at
    ``refine - 1`` interior samples of the edge between them, so thin
    light-like bands narrower than the grid step still separate components.
    ``naive_counts`` reports plain 4-connectivity for comparison.
    """
    if n < 16:
        raise ValueError("census needs at least 16 nodes per axis")
    a, b = _grid(window, n)
    A, B = np.meshgrid(a, b, indexing="ij")
    disc, scale = discriminant(g, A, B)
    labels = _label(disc, scale, tau_light)
    sign = np.sign(disc)

    h_same = labels[:-1] == labels[1:]
    v_same = labels[:, :-1] == labels[:, 1:]
    h_edges = h_same & _edge_ok(g, A[:-1], B[:-1], A[1:], B[1:], sign[:-1], refine, tau_light)
    v_edges = v_same & _edge_ok(g, A[:, :-1], B[:, :-1], A[:, 1:], B[:, 1:], sign[:, :-1],
                                refine, tau_light)

    counts, naive, boxes = {}, {}, {}
    for kind in (Causal.SPACELIKE, Causal.TIMELIKE):
        comp, uniq = _components(labels, h_edges, v_edges, kind)
        counts[kind] = len(uniq)
        naive[kind.name.lower()] = len(_components(labels, h_same, v_same, kind)[1])
        mask = labels == kind
        boxes[kind.name.lower()] = [
            [float(A[sel].min()), float(A[sel].max()), float(B[sel].min()), float(B[sel].max())]
            for sel in (mask & (comp == c) for c in uniq)
        ]
    return CensusReport(tuple(float(w) for w in window), n, tau_light,
                        counts[Causal.SPACELIKE], counts[Causal.TIMELIKE],
                        int(np.sum(labels == Causal.LIGHTLIKE)), boxes, naive, refine)


# membership --------------------------------------------------------------------
def membership_values(points, s: ImplicitSurface, squared: bool = True):
    t, x, y = np.asarray(points, dtype=float)
    f = s if squared else s.residual
    return np.abs(f(t, x, y))


def membership_residual(points, s: ImplicitSurface, squared: bool = True) -> float:
    """Max of ``|residual|`` over the points (a ``(3, N)`` array or Point3)."""
    return float(np.max(membership_values(points, s, squared)))


def membership_report(points, s: ImplicitSurface, tol: float, name: str = "membership") -> Report:
    pts = np.asarray(points, dtype=float)
    vals = membership_values(pts, s)
    k = int(np.argmax(vals))
    return Report(name, bool(vals[k] <= tol), tol, float(vals[k]), pts[:, k].tolist(),
                  counts={"points": int(vals.size)}, details={"implicit": s.formula})


# singular locus ----------------------------------------------------------------
@dataclass
class SingularScan:
    points: np.ndarray          # (k, 2) flagged (u, v)
    clusters: list              # list of (m, 2) arrays
    excluded: np.ndarray        # (e, 2) grid points outside the region
    step: float
    threshold: float

    def to_report(self, tol=None, distance=None) -> Report:
        return Report("singular", True if tol is None else bool(distance <= tol), tol, distance,
                      counts={"flagged": len(self.points), "clusters": len(self.clusters),
                              "excluded": len(self.excluded)},
                      details={"step": self.step, "threshold": self.threshold})


def singular_locus_scan(d: WeierstrassData, formula, region=None, threshold: float = 1e-3,
                        n: int = 400) -> SingularScan:
    """Grid points where ``|lam| < threshold``, clustered by 8-connectivity.

    ``region`` is a RegionSpec or a ``(u0, u1, v0, v1)`` tuple; points
    violating the region's constraints (within its margin) are returned as
    ``excluded`` and never flagged, so a diverging factor near excluded
    lines is not mistaken for degeneracy.
    """
    if region is None:
        region = d.region
    if not isinstance(region, RegionSpec):
        region = RegionSpec(tuple(region))
    u0, u1, v0, v1 = region.bounds
    u, v = np.linspace(u0, u1, n), np.linspace(v0, v1, n)
    U, V = np.meshgrid(u, v, indexing="ij")
    z = ParaComplex(U, V)
    inside = np.asarray(region.satisfies_constraints(z), dtype=bool)
    with np.errstate(all="ignore"):
        lam = np.broadcast_to(conformal_factor(d, Formula(formula), z), U.shape)
    flagged = inside & np.isfinite(lam) & (np.abs(lam) < threshold)
    lab, k = ndimage.label(flagged, structure=np.ones((3, 3)))
    clusters = [np.column_stack([U[lab == i], V[lab == i]]) for i in range(1, k + 1)]
    return SingularScan(np.column_stack([U[flagged], V[flagged]]), clusters,
                        np.column_stack([U[~inside], V[~inside]]), float(u[1] - u[0]), threshold)


def hausdorff_distance(a, b) -> float:
    """Symmetric Hausdorff distance between two point clouds of shape (k, 2)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if len(a) == 0 or len(b) == 0:
        return float("inf")
    return float(max(cKDTree(b).query(a)[0].max(), cKDTree(a).query(b)[0].max()))


# isometries --------------------------------------------------------------------
@dataclass(frozen=True)
class Isometry:
    """``(t, x, y) -> (t_sign t, s0 q[perm[0]], s1 q[perm[1]]) + shift`` with ``q = (x, y)``.

    Signed permutations of the spatial axes together with a time
    reflection preserve the Lorentzian product exactly.
    """

    perm: tuple = (0, 1)
    signs: tuple = (1, 1)
    t_sign: int = 1
    shift: tuple = (0.0, 0.0, 0.0)

    @property
    def matrix(self) -> np.ndarray:
        m = np.zeros((3, 3))
        m[0, 0] = self.t_sign
        for i in range(2):
            m[1 + i, 1 + self.perm[i]] = self.signs[i]
        return m

    def __call__(self, points) -> np.ndarray:
        p = np.asarray(points, dtype=float)
        return np.tensordot(self.matrix, p, axes=(1, 0)) + np.reshape(self.shift, (3,) + (1,) * (p.ndim - 1))

    def preserves_metric(self) -> bool:
        eta = np.diag([-1.0, 1.0, 1.0])
        m = self.matrix
        return bool(np.array_equal(m.T @ eta @ m, eta))


IDENTITY = Isometry()
SHIFT_CANDIDATES = (0.0, np.pi / 2, -np.pi / 2, np.pi)


def linear_isometries():
    for perm in ((0, 1), (1, 0)):
        for s0, s1, st in itertools.product((1, -1), repeat=3):
            yield Isometry(perm, (s0, s1), st)


def congruence_residual(a_points, b: ImplicitSurface, iso: Isometry) -> float:
    """Max ``|residual of b|`` over the isometric images of samples of ``a``."""
    return membership_residual(iso(a_points), b)


def find_isometry(a_points, b: ImplicitSurface, tol: float = 1e-9,
                  shifts=SHIFT_CANDIDATES, refine: bool = True):
    """Search the 16 signed axis permutations and spatial shifts in ``shifts``.

    Returns ``(isometry, residual)`` for the best candidate.  When no
    candidate meets ``tol`` the best translation is refined by least squares
    on the residual of ``b``.
    """
    best, best_res = None, np.inf
    for lin in linear_isometries():
        for dx, dy in itertools.product(shifts, repeat=2):
            iso = Isometry(lin.perm, lin.signs, lin.t_sign, (0.0, dx, dy))
            with np.errstate(all="ignore"):
                res = congruence_residual(a_points, b, iso)
            if np.isfinite(res) and res < best_res:
                best, best_res = iso, res
    if best_res > tol and refine and best is not None:
        sample = np.asarray(a_points, dtype=float)
        moved = np.tensordot(best.matrix, sample, axes=(1, 0))

        def fun(shift):
            return b(*(moved + shift[:, None]))

        fit = optimize.least_squares(fun, np.asarray(best.shift), xtol=1e-15, ftol=1e-15)
        cand = Isometry(best.perm, best.signs, best.t_sign, tuple(fit.x))
        res = congruence_residual(a_points, b, cand)
        if res < best_res:
            best, best_res = cand, res
    return best, float(best_res)


# umbilics ----------------------------------------------------------------------
def umbilic_residual(g: EntireGraph, x, y, mode: str = "fd", h: float = 1e-4):
    """``||II - H I||_F`` with ``H = tr(I^-1 II)/2`` for a type-S graph.

    The normal is ``(1, f_x, f_y)/sqrt(disc)``; NaN where the graph is not
    space-like.
    """
    fx, fy, fxx, fxy, fyy = graph_partials(g, x, y, mode, h)
    disc = 1 - fx ** 2 - fy ** 2
    E, F, G = 1 - fx ** 2, -fx * fy, 1 - fy ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        root = np.where(disc > 0, np.sqrt(np.abs(disc)), np.nan)
        L, M, N = -fxx / root, -fxy / root, -fyy / root
        H = (G * L - 2 * F * M + E * N) / (2 * disc)
    return np.sqrt((L - H * E) ** 2 + 2 * (M - H * F) ** 2 + (N - H * G) ** 2)


def umbilic_scan(g: EntireGraph, window, n: int, min_disc: float = 0.05,
                 mode: str = "fd", h: float = 1e-4) -> Report:
    """Minimum umbilic residual over grid nodes with discriminant >= ``min_disc``."""
    a, b = _grid(window, n)
    A, B = np.meshgrid(a, b, indexing="ij")
    disc, _ = discriminant(g, A, B)
    res = umbilic_residual(g, A, B, mode, h)
    res = np.where(disc >= min_disc, res, np.nan)
    if np.all(np.isnan(res)):
        return Report("umbilic", False, window=list(window), grid=n,
                      counts={"spacelike_nodes": 0})
    k = np.unravel_index(np.nanargmin(res), res.shape)
    return Report("umbilic", bool(res[k] > 0), None, float(res[k]),
                  [float(A[k]), float(B[k])], list(window), n,
                  counts={"spacelike_nodes": int(np.sum(disc >= min_disc))},
                  details={"min_residual": float(res[k]), "min_disc": min_disc, "mode": mode})


# appendix identities -----------------------------------------------------------
def identity_suite(n: int = 10_000, seed: int = 0, tol: float = 1e-9) -> Report:
    """Property checks of the para-complex identities on ``n`` random inputs each."""
    rng = np.random.default_rng(seed)
    errs = {}

    def rel(a, b):
        return np.abs(a - b) / np.maximum(1.0, np.abs(b))

    zu, zv = rng.uniform(-3, 3, n), rng.uniform(-3, 3, n)
    z = ParaComplex(zu, zv)
    back = pc.p_log(pc.p_exp(z))
    errs["log_exp"] = np.max(np.maximum(np.abs(back.re - zu), np.abs(back.im - zv)))

    off = ~pc.on_null_cone(z, 1e-6)
    zo = z[off]
    e = pc.p_exp(pc.p_log(zo[(pc.norm2(zo) > 0) & (zo.re > 0)]))
    zp = zo[(pc.norm2(zo) > 0) & (zo.re > 0)]
    errs["exp_log"] = np.max(np.maximum(rel(e.re, zp.re), rel(e.im, zp.im)))

    def rational(x):
        return (x ** 3 - 2 * x + 1) / (x ** 2 + 1)

    lifted = tilde_extend(rational)(z)
    direct = (z ** 3 - 2 * z + 1) / (z ** 2 + 1)
    errs["rational_substitution"] = np.max(np.maximum(rel(lifted.re, direct.re),
                                                      rel(lifted.im, direct.im)))

    dtan = deriv(arctan(Z)).eval(z)
    expect = 1 / (1 + z ** 2)
    errs["arctan_derivative"] = np.max(np.maximum(rel(dtan.re, expect.re), rel(dtan.im, expect.im)))

    n3 = pc.norm2(1 + z ** 2)
    n3_expect = (1 + (zu - zv) ** 2) * (1 + (zu + zv) ** 2)
    errs["norm_one_plus_square"] = np.max(rel(n3, n3_expect))
    positive = bool(np.all(n3 > 0))

    a, b = rng.uniform(0.1, 10, n), rng.uniform(0.1, 10, n)
    errs["cosh_log"] = np.max(rel(np.cosh(np.log(a / b)), (a * a + b * b) / (2 * a * b)))
    errs["sinh_log"] = np.max(rel(np.sinh(np.log(a / b)), (a * a - b * b) / (2 * a * b)))
    s, r = rng.uniform(-10, 10, n), rng.uniform(-10, 10, n)
    root = np.sqrt(1 + s * s) * np.sqrt(1 + r * r)
    errs["arctan_addition"] = max(
        np.max(rel(np.cos(np.arctan(s) + np.arctan(r)), (1 - s * r) / root)),
        np.max(rel(np.cos(np.arctan(s) - np.arctan(r)), (1 + s * r) / root)),
        np.max(rel(np.sin(np.arctan(s) + np.arctan(r)), (s + r) / root)),
        np.max(rel(np.sin(np.arctan(s) - np.arctan(r)), (s - r) / root)),
    )

    n2 = pc.norm2(zo)
    th = pc.argh(zo)
    m = np.sqrt(np.abs(n2))
    big, small = np.where(n2 > 0, np.abs(zo.re), np.abs(zo.im)), np.where(n2 > 0, np.abs(zo.im), np.abs(zo.re))
    errs["cosh_argh"] = np.max(rel(np.cosh(th), big / m))
    errs["sinh_argh"] = np.max(rel(np.abs(np.sinh(th)), small / m))

    worst = max(errs, key=errs.get)
    return Report("identities", bool(errs[worst] <= tol and positive), tol, float(errs[worst]),
                  counts={"samples": n}, details={"errors": errs, "norm_positive": positive,
                                                  "worst": worst})

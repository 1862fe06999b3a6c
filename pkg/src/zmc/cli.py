"""``zmc`` command line: catalog queries, mesh generation, verification suites.

Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import catalog, meshio
from . import verify as V
from .errors import ZMCError
from .paracomplex import ParaComplex, norm2
from .paraholo import RegionSpec
from .weierstrass import Formula, SurfacePatch, conformal_factor

SUITES = ("zmc", "membership", "census", "singular", "congruence", "umbilic", "identities")
FORMATS = ("obj", "ply", "csv")

#: scale under which each data set's raw immersion lands on its catalog implicit set
PLACEMENT_SCALE = {"scherk": 2.0, "catenoid": 0.5}

CONGRUENCES = (("scherk_S4", "scherk_S1p"), ("scherk_S4p", "scherk_S1"),
               ("scherk_S3", "scherk_S2p"), ("scherk_S3p", "scherk_S2"),
               ("graph_K4", "scherk_S4"))


class ConfigError(ZMCError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str = ""
    action: str | None = None      # catalog list|show, or the verify suite
    name: str | None = None        # catalog show target
    surface: str | None = None
    formula: str | None = None
    region: str | None = None
    graph: str | None = None
    implicit: str | None = None
    window: tuple | None = None
    grid: int | None = None
    tol: float | None = None
    out: str | None = None
    format: str | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys {sorted(extra)}")
        d = dict(d)
        if d.get("window") is not None:
            w = d["window"]
            d["window"] = parse_window(w) if isinstance(w, str) else tuple(float(v) for v in w)
        return cls(**d)


_NUM = re.compile(r"^([+-]?)(\d*\.?\d*(?:[eE][+-]?\d+)?)\*?(pi)?(?:/(\d*\.?\d+))?$")


def parse_number(text: str) -> float:
    """Floats with an optional ``pi`` factor: ``-4pi``, ``pi/2``, ``2.5``, ``3*pi``."""
    m = _NUM.match(text.strip())
    if not m or (not m.group(2) and not m.group(3)):
        raise ConfigError(f"cannot parse number {text!r}")
    sign, mant, pi, den = m.groups()
    val = float(mant) if mant else 1.0
    if pi:
        val *= np.pi
    if den:
        val /= float(den)
    return -val if sign == "-" else val


def parse_window(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 4:
        raise ConfigError(f"window needs four comma-separated values, got {text!r}")
    w = tuple(parse_number(p) for p in parts)
    if not (w[0] < w[1] and w[2] < w[3]):
        raise ConfigError(f"empty window {text!r}")
    return w


# generation --------------------------------------------------------------------
def _patch_spec(cfg: RunConfig):
    """Resolve ``(data, formula, scale)`` from a catalog entry or a data-set name."""
    name = cfg.surface
    if name in catalog.names():
        e = catalog.get(name)
        if e.data is None:
            raise ConfigError(f"{name} has no parametrization")
        data, formula, scale = e.data, Formula(cfg.formula or e.formula), e.scale
        if cfg.region:
            data = catalog.data_in_region(data.name, cfg.region)
        return data, formula, scale
    if cfg.formula is None:
        raise ConfigError("--formula is required with a Weierstrass data name")
    data = catalog.data_in_region(name, cfg.region)
    return data, Formula(cfg.formula), PLACEMENT_SCALE.get(name, 1.0)


def _graph_mesh(g: catalog.EntireGraph, window, n: int) -> meshio.Mesh:
    a, b = np.linspace(window[0], window[1], n), np.linspace(window[2], window[3], n)
    A, B = np.meshgrid(a, b, indexing="ij")
    p = np.array(g.embed(A.ravel(), B.ravel()))
    lab = V.causal_classify(g, A.ravel(), B.ravel())
    faces, _ = meshio.grid_faces(np.ones(A.shape, dtype=bool))
    return meshio.Mesh(A.ravel(), B.ravel(), p, lab.kind, lab.discriminant, faces)


def _patch_mesh(data, formula, scale, window, n) -> meshio.Mesh:
    region = data.region or RegionSpec((-2.0, 2.0, -2.0, 2.0))
    if window is not None:
        region = replace(region, bounds=tuple(window))
    Z, mask = region.grid(n, closed=True)
    mask = np.asarray(mask, dtype=bool) & np.asarray(region.satisfies_constraints(Z), dtype=bool)
    if not mask.any():
        raise ConfigError("no grid point lies inside the region")
    zk = Z[mask]
    patch = SurfacePatch(data.with_region(region) if data.region else data, formula)
    if patch.closed_form is not None:
        pts = scale * np.array(patch(zk, normalized=False))
    else:
        pts = scale * np.array(patch(zk))
    lam = scale ** 2 * np.broadcast_to(conformal_factor(data, formula, zk), zk.shape)
    # conformal patches have det I = -lam^2, so only lam = 0 is not time-like
    labels = np.where(np.abs(lam) <= V.TAU_LIGHT, V.Causal.LIGHTLIKE, V.Causal.TIMELIKE)
    faces, _ = meshio.grid_faces(mask.reshape(n, n))
    return meshio.Mesh(zk.re, zk.im, pts, labels.astype(np.uint8), lam, faces)


def build_mesh(cfg: RunConfig) -> meshio.Mesh:
    n = cfg.grid or 100
    gname = cfg.graph or (cfg.surface if cfg.surface in catalog.GRAPHS else None)
    if gname:
        e = catalog.get(gname)
        if e.graph is None:
            raise ConfigError(f"{gname} is not an entire graph")
        return _graph_mesh(e.graph, cfg.window or e.window, n)
    if not cfg.surface:
        raise ConfigError("generate needs --surface or --graph")
    return _patch_mesh(*_patch_spec(cfg), cfg.window, n)


def cmd_generate(cfg: RunConfig) -> int:
    if not cfg.out:
        raise ConfigError("generate needs --out")
    fmt = cfg.format or Path(cfg.out).suffix.lstrip(".") or "obj"
    if fmt not in FORMATS:
        raise ConfigError(f"unknown format {fmt!r}; choose from {FORMATS}")
    mesh = build_mesh(cfg)
    written = meshio.write(mesh, cfg.out, fmt)
    print(json.dumps({"vertices": mesh.n_vertices, "faces": int(len(mesh.faces)),
                      "files": [str(p) for p in written]}))
    return 0


# verification suites -------------------------------------------------------------
def _graph_entry(cfg, default):
    name = cfg.graph or cfg.surface or default
    e = catalog.get(name)
    if e.graph is None:
        raise ConfigError(f"{name} is not an entire graph")
    return e


def suite_zmc(cfg: RunConfig) -> V.Report:
    e = _graph_entry(cfg, "graph_S1p")
    tol = cfg.tol if cfg.tol is not None else 1e-10
    window = cfg.window or e.window
    n = cfg.grid or 1000
    rng = np.random.default_rng(0)
    x, y = rng.uniform(window[0], window[1], n), rng.uniform(window[2], window[3], n)
    res = np.abs(V.zmc_residual(e.graph, x, y))
    k = int(np.argmax(res))
    return V.Report("zmc", bool(res[k] <= tol), tol, float(res[k]), [x[k], y[k]],
                    list(window), n, {"points": n}, {"graph": e.name, "mode": "analytic"})


def suite_membership(cfg: RunConfig) -> V.Report:
    tol = cfg.tol if cfg.tol is not None else 1e-7
    n = cfg.grid or 50
    if cfg.graph:
        e = catalog.get(cfg.graph)
        imp = catalog.get(cfg.implicit).implicit if cfg.implicit else e.implicit
        pts = np.array(_graph_mesh(e.graph, cfg.window or e.window, n).points)
    else:
        if not cfg.surface:
            raise ConfigError("membership needs --surface or --graph")
        if cfg.implicit:
            imp = catalog.get(cfg.implicit).implicit
        elif cfg.surface in catalog.names():
            imp = catalog.get(cfg.surface).implicit
        else:
            raise ConfigError("membership needs --implicit")
        if cfg.surface in catalog.names() and not cfg.window and not cfg.region \
                and catalog.get(cfg.surface).data is not None:
            pts = catalog.get(cfg.surface).sample_points(n)
        else:
            pts = _patch_mesh(*_patch_spec(cfg), cfg.window, n).points
    if imp is None:
        raise ConfigError("no implicit surface to test against")
    r = V.membership_report(pts, imp, tol)
    r.grid = n
    return r


def suite_census(cfg: RunConfig) -> V.Report:
    e = _graph_entry(cfg, "graph_S1p")
    window = cfg.window or (-4 * np.pi, 4 * np.pi, -6.0, 6.0)
    c = V.component_census(e.graph, window, cfg.grid or 600,
                           cfg.tol if cfg.tol is not None else V.TAU_LIGHT)
    d = c.to_dict()
    passed = c.spacelike_components == 1 and c.timelike_components >= 1
    d["details"]["graph"] = e.name
    d["details"]["more_than_four_timelike"] = c.timelike_components > 4
    return V.Report("census", passed, c.tol, None, None, list(c.window), c.grid,
                    c.counts, d["details"])


def _predicted_locus(data, formula, region, n):
    """Midpoints of fine-grid edges where the metric factor changes sign."""
    u0, u1, v0, v1 = region.bounds
    U, W = np.meshgrid(np.linspace(u0, u1, n), np.linspace(v0, v1, n), indexing="ij")
    g = data.g.eval(ParaComplex(U, W), strict=False)
    f = 1 - norm2(g) if Formula(formula).kind == "first" else g.re
    f = np.broadcast_to(f, U.shape)
    pts = []
    for ax in (0, 1):
        a = np.take(f, range(n - 1), axis=ax)
        b = np.take(f, range(1, n), axis=ax)
        cross = np.sign(a) * np.sign(b) < 0
        mu = 0.5 * (np.take(U, range(n - 1), axis=ax) + np.take(U, range(1, n), axis=ax))
        mv = 0.5 * (np.take(W, range(n - 1), axis=ax) + np.take(W, range(1, n), axis=ax))
        pts.append(np.column_stack([mu[cross], mv[cross]]))
    return np.concatenate(pts)


def suite_singular(cfg: RunConfig) -> V.Report:
    data, formula, _ = _patch_spec(replace(cfg, surface=cfg.surface or "enneper",
                                           formula=cfg.formula or "F1"))
    region = data.region or RegionSpec((-2.0, 2.0, -2.0, 2.0))
    region = replace(region, bounds=tuple(cfg.window or (-2.0, 2.0, -2.0, 2.0)))
    n = cfg.grid or 400
    scan = V.singular_locus_scan(data, formula, region, 1e-3, n)
    expected = _predicted_locus(data, formula, region, 4 * n)
    if len(scan.points) == 0 and len(expected) == 0:
        dist = 0.0
    else:
        dist = V.hausdorff_distance(scan.points, expected)
    tol = cfg.tol if cfg.tol is not None else 2 * scan.step
    r = scan.to_report(tol, dist)
    r.window, r.grid = list(region.bounds), n
    return r


def suite_congruence(cfg: RunConfig) -> V.Report:
    tol = cfg.tol if cfg.tol is not None else 1e-9
    pairs = [(cfg.surface, cfg.implicit)] if cfg.surface and cfg.implicit else CONGRUENCES
    results, worst = {}, (-1.0, None)
    for a, b in pairs:
        pts = catalog.get(a).sample_points(cfg.grid or 30)
        iso, res = V.find_isometry(pts, catalog.get(b).implicit, tol)
        results[f"{a}->{b}"] = {"residual": res, "perm": list(iso.perm), "signs": list(iso.signs),
                                "t_sign": iso.t_sign, "shift": list(iso.shift)}
        worst = max(worst, (res, f"{a}->{b}"), key=lambda p: p[0])
    return V.Report("congruence", bool(worst[0] <= tol), tol, worst[0], None,
                    counts={"pairs": len(pairs)}, details={"worst": worst[1], "pairs": results})


def suite_umbilic(cfg: RunConfig) -> V.Report:
    e = _graph_entry(cfg, "graph_S1p")
    r = V.umbilic_scan(e.graph, cfg.window or (-np.pi, np.pi, -2.0, 2.0), cfg.grid or 200)
    r.tol = cfg.tol if cfg.tol is not None else 1e-3
    r.passed = bool(r.max_residual is not None and r.max_residual >= r.tol)
    r.details["graph"] = e.name
    return r


def suite_identities(cfg: RunConfig) -> V.Report:
    return V.identity_suite(cfg.grid or 10_000, tol=cfg.tol if cfg.tol is not None else 1e-9)


SUITE_RUNNERS = {
    "zmc": suite_zmc, "membership": suite_membership, "census": suite_census,
    "singular": suite_singular, "congruence": suite_congruence, "umbilic": suite_umbilic,
    "identities": suite_identities,
}


def _emit(text: str, out: str | None) -> None:
    print(text)
    if out:
        Path(out).write_text(text + "\n")


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.action not in SUITE_RUNNERS:
        raise ConfigError(f"unknown suite {cfg.action!r}; choose from {SUITES}")
    report = SUITE_RUNNERS[cfg.action](cfg)
    _emit(report.to_json(), cfg.out)
    return 0 if report.passed else 1


def cmd_catalog(cfg: RunConfig) -> int:
    if cfg.action == "list":
        _emit(json.dumps(catalog.list_entries(), indent=2), cfg.out)
    else:
        _emit(json.dumps(catalog.get(cfg.name).to_dict(), indent=2), cfg.out)
    return 0


def cmd_export(cfg: RunConfig) -> int:
    _emit(json.dumps(catalog.dump(), indent=2), cfg.out)
    return 0


# argument handling -------------------------------------------------------------
def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--surface", help="catalog entry or Weierstrass data name")
    p.add_argument("--formula", choices=[f.value for f in Formula])
    p.add_argument("--region", help="named region of the data, e.g. dplus, dminus")
    p.add_argument("--graph", help="entire-graph catalog entry")
    p.add_argument("--implicit", help="catalog entry whose implicit set is tested")
    p.add_argument("--window", help="a0,a1,b0,b1; values may use pi, e.g. -4pi,4pi,-6,6")
    p.add_argument("--grid", type=int, help="nodes per axis (or sample count)")
    p.add_argument("--tol", type=float)
    p.add_argument("--out")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--config", help="JSON file mirroring RunConfig; flags override it")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zmc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    cat = sub.add_parser("catalog", help="list or show catalog entries")
    cat_sub = cat.add_subparsers(dest="action", required=True)
    lst = cat_sub.add_parser("list")
    lst.add_argument("--out")
    show = cat_sub.add_parser("show")
    show.add_argument("name")
    show.add_argument("--out")
    _common(sub.add_parser("generate", help="write a mesh with a CSV sidecar"))
    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("action", metavar="suite", choices=SUITES)
    _common(ver)
    exp = sub.add_parser("export", help="dump the catalog as JSON")
    exp.add_argument("--out")
    return parser


def _join_windows(argv):
    """Glue ``--window VALUE`` into one token so negative values are not flags."""
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--window":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--window={nxt}")
        else:
            out.append(tok)
    return out


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    base = {}
    cfg_path = getattr(ns, "config", None)
    if cfg_path:
        try:
            base = json.loads(Path(cfg_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {cfg_path}: {exc}") from None
    flags = {k: v for k, v in vars(ns).items() if k != "config" and v is not None}
    merged = {**base, **flags}
    return RunConfig.from_dict(merged)


COMMANDS = {"catalog": cmd_catalog, "generate": cmd_generate, "verify": cmd_verify,
            "export": cmd_export}


def main(argv=None) -> int:
    argv = _join_windows(sys.argv[1:] if argv is None else list(argv))
    ns = make_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (ZMCError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

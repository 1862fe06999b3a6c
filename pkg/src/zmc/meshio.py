"""Mesh and sidecar writers: OBJ, binary PLY and CSV.

Vertices arrive row-major over an ``n x n`` parameter grid together with a
keep-mask; faces are the grid cells whose four corners are all kept.
Floats are written with 17 significant digits so that output is
byte-identical for identical input.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .verify import Causal


@dataclass(frozen=True)
class Mesh:
    u: np.ndarray        # parameter values of kept vertices
    v: np.ndarray
    points: np.ndarray   # (3, k) as (t, x, y)
    labels: np.ndarray   # uint8 Causal codes
    lam: np.ndarray      # conformal factor or discriminant
    faces: np.ndarray    # (f, 4) zero-based indices into the kept vertices

    @property
    def n_vertices(self) -> int:
        return self.points.shape[1]


def grid_faces(mask: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Quad faces of the kept cells and the old-to-new vertex index map."""
    n_a, n_b = mask.shape
    remap = np.full(mask.size, -1, dtype=np.int64)
    flat = mask.ravel()
    remap[flat] = np.arange(int(flat.sum()))
    idx = np.arange(mask.size).reshape(n_a, n_b)
    quads = np.stack([idx[:-1, :-1], idx[1:, :-1], idx[1:, 1:], idx[:-1, 1:]], axis=-1).reshape(-1, 4)
    keep = np.all(flat[quads], axis=1)
    return remap[quads[keep]], remap


def _fmt(x) -> str:
    return "%.17g" % x


def write_obj(mesh: Mesh, path) -> None:
    t, x, y = mesh.points
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# {mesh.n_vertices} vertices, axes (x, y, t)\n")
        for a, b, c in zip(x, y, t):
            fh.write(f"v {_fmt(a)} {_fmt(b)} {_fmt(c)}\n")
        for f in mesh.faces + 1:
            fh.write("f %d %d %d %d\n" % tuple(f))


def write_ply(mesh: Mesh, path) -> None:
    t, x, y = mesh.points
    header = (
        "ply\nformat binary_little_endian 1.0\n"
        f"element vertex {mesh.n_vertices}\n"
        "property double x\nproperty double y\nproperty double t\nproperty uchar label\n"
        f"element face {len(mesh.faces)}\n"
        "property list uchar int vertex_indices\nend_header\n"
    )
    vdt = np.dtype([("x", "<f8"), ("y", "<f8"), ("t", "<f8"), ("label", "u1")])
    verts = np.empty(mesh.n_vertices, dtype=vdt)
    verts["x"], verts["y"], verts["t"], verts["label"] = x, y, t, mesh.labels
    fdt = np.dtype([("n", "u1"), ("idx", "<i4", (4,))])
    faces = np.empty(len(mesh.faces), dtype=fdt)
    faces["n"] = 4
    faces["idx"] = mesh.faces
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(verts.tobytes())
        fh.write(faces.tobytes())


def read_ply(path) -> dict:
    """Parse files produced by :func:`write_ply` (used by tests and demos)."""
    data = Path(path).read_bytes()
    end = data.index(b"end_header\n") + len(b"end_header\n")
    header = data[:end].decode("ascii").splitlines()
    nv = int(next(l for l in header if l.startswith("element vertex")).split()[-1])
    nf = int(next(l for l in header if l.startswith("element face")).split()[-1])
    vdt = np.dtype([("x", "<f8"), ("y", "<f8"), ("t", "<f8"), ("label", "u1")])
    fdt = np.dtype([("n", "u1"), ("idx", "<i4", (4,))])
    verts = np.frombuffer(data, dtype=vdt, count=nv, offset=end)
    faces = np.frombuffer(data, dtype=fdt, count=nf, offset=end + nv * vdt.itemsize)
    return {"header": header, "vertices": verts, "faces": faces}


CSV_COLUMNS = ("u", "v", "t", "x", "y", "label", "lambda")


def write_csv(mesh: Mesh, path) -> None:
    t, x, y = mesh.points
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in zip(mesh.u, mesh.v, t, x, y, mesh.labels, mesh.lam):
            *nums, lab, lam = row
            w.writerow([_fmt(q) for q in nums] + [Causal(int(lab)).name.lower(), _fmt(lam)])


WRITERS = {"obj": write_obj, "ply": write_ply, "csv": write_csv}


def write(mesh: Mesh, path, fmt: str) -> list:
    """Write ``mesh`` in ``fmt``; OBJ and PLY also get a ``.csv`` sidecar.

    Returns the list of written paths.
    """
    path = Path(path)
    WRITERS[fmt](mesh, path)
    out = [path]
    if fmt != "csv":
        side = path.with_suffix(".csv")
        write_csv(mesh, side)
        out.append(side)
    return out

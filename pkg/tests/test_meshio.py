import csv

import numpy as np

from zmc import meshio
from zmc.verify import Causal


def small_mesh():
    mask = np.ones((3, 4), dtype=bool)
    mask[2, 3] = False
    faces, _ = meshio.grid_faces(mask)
    k = int(mask.sum())
    u = np.arange(k, dtype=float)
    pts = np.vstack([u * 0.1, u + 1 / 3, -u])
    labels = np.where(u % 2 == 0, Causal.SPACELIKE, Causal.TIMELIKE).astype(np.uint8)
    return meshio.Mesh(u, -u, pts, labels, u - 2.5, faces)


def test_grid_faces_skip_cells_with_dropped_corners():
    mask = np.ones((3, 4), dtype=bool)
    faces, remap = meshio.grid_faces(mask)
    assert faces.shape == (6, 4)
    mask[2, 3] = False
    faces, remap = meshio.grid_faces(mask)
    assert faces.shape == (5, 4)
    assert remap[11] == -1 and faces.max() == 10


def test_obj_layout(tmp_path):
    m = small_mesh()
    meshio.write_obj(m, tmp_path / "m.obj")
    lines = (tmp_path / "m.obj").read_text().splitlines()
    verts = [l for l in lines if l.startswith("v ")]
    faces = [l for l in lines if l.startswith("f ")]
    assert len(verts) == 11 and len(faces) == 5
    # axes are written as (x, y, t)
    x, y, t = map(float, verts[1].split()[1:])
    assert (x, y, t) == (m.points[1, 1], m.points[2, 1], m.points[0, 1])
    assert verts[1].split()[1] == "1.3333333333333333"
    assert min(int(i) for f in faces for i in f.split()[1:]) == 1


def test_ply_round_trip(tmp_path):
    m = small_mesh()
    meshio.write_ply(m, tmp_path / "m.ply")
    doc = meshio.read_ply(tmp_path / "m.ply")
    assert "format binary_little_endian 1.0" in doc["header"]
    v = doc["vertices"]
    assert np.array_equal(v["t"], m.points[0]) and np.array_equal(v["x"], m.points[1])
    assert np.array_equal(v["label"], m.labels)
    assert np.array_equal(doc["faces"]["idx"], m.faces)
    assert np.all(doc["faces"]["n"] == 4)


def test_csv_columns(tmp_path):
    m = small_mesh()
    meshio.write_csv(m, tmp_path / "m.csv")
    with open(tmp_path / "m.csv") as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == meshio.CSV_COLUMNS
    assert len(rows) == 12
    assert rows[1][5] == "spacelike" and rows[2][5] == "timelike"
    assert float(rows[3][6]) == m.lam[2]


def test_write_adds_sidecar_and_is_deterministic(tmp_path):
    m = small_mesh()
    a = meshio.write(m, tmp_path / "a.ply", "ply")
    b = meshio.write(m, tmp_path / "b.ply", "ply")
    assert [p.suffix for p in a] == [".ply", ".csv"]
    for p, q in zip(a, b):
        assert p.read_bytes() == q.read_bytes()
    assert meshio.write(m, tmp_path / "c.csv", "csv") == [tmp_path / "c.csv"]

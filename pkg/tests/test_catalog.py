import json
import math

import numpy as np
import pytest

from zmc import catalog as C
from zmc.errors import UnknownEntry
from zmc.verify import Isometry, membership_residual

PATCH_ENTRIES = [n for n in C.names() if C.get(n).data is not None and C.get(n).implicit is not None]


def test_names_cover_the_families():
    names = C.names()
    assert len(names) == 24
    for k in range(1, 5):
        assert f"scherk_S{k}" in names and f"scherk_S{k}p" in names
        assert f"kobayashi_K{k}" in names
    assert {"graph_S1p", "graph_E4", "graph_C2", "graph_K4"} <= set(names)


def test_unknown_entry():
    with pytest.raises(UnknownEntry) as info:
        C.get("nosuch")
    assert str(info.value) == "unknown catalog entry 'nosuch'"


def test_implicit_formula_strings():
    assert C.get("scherk_S1p").implicit.formula == "sinh(t) - exp(y)*cos(x)"
    assert C.get("catenoid_C2").implicit.formula == "t - x*tanh(y)"
    assert C.get("kobayashi_K4").implicit.formula == "sinh(t) + exp(y)*sin(x)"


@pytest.mark.parametrize("name", sorted(C.IMPLICIT))
def test_formula_strings_match_callables(name):
    imp = C.IMPLICIT[name]
    rng = np.random.default_rng(0)
    t, x, y = rng.uniform(-1, 1, (3, 50))
    env = {"sinh": np.sinh, "cosh": np.cosh, "tanh": np.tanh, "exp": np.exp, "sin": np.sin,
           "cos": np.cos, "t": t, "x": x, "y": y}
    assert np.allclose(eval(imp.formula, env), imp.residual(t, x, y), atol=1e-14)
    if imp.squared is not None:
        assert np.allclose(eval(imp.squared_formula, env), imp.squared(t, x, y), atol=1e-13)


def test_graph_spot_values():
    assert np.allclose(C.graph_eval(C.GRAPHS["graph_E4"], 2.0, -2.0), (-7 / 3, 2, 1 / 3))
    assert np.allclose(C.graph_eval(C.GRAPHS["graph_S1p"], 0.0, 0.0), (math.asinh(1), 0, 0))
    assert np.allclose(C.graph_eval(C.GRAPHS["graph_C2"], 2.0, 0.5),
                       (2 * math.tanh(0.5), 2, 0.5))


def test_lightlike_round_trip():
    rng = np.random.default_rng(1)
    p = rng.normal(size=(3, 20))
    back = C.from_lightlike(*C.lightlike_coords(p))
    assert np.allclose(back, p, atol=1e-15)


def test_affine_graph():
    g = C.affine_graph(0.3, -0.4, 1.0)
    assert np.allclose(g.embed(1.0, 2.0), (0.3 - 0.8 + 1.0, 1.0, 2.0))
    assert np.allclose(g.partials(1.0, 2.0), (0.3, -0.4, 0, 0, 0))


@pytest.mark.parametrize("name", PATCH_ENTRIES)
def test_patch_entries_lie_on_their_implicit_sets(name):
    e = C.get(name)
    pts = e.sample_points(30)
    assert pts.shape[0] == 3 and pts.shape[1] > 50
    tol = 1e-10 if name.startswith("enneper") else 1e-7
    assert membership_residual(pts, e.implicit) <= tol


@pytest.mark.parametrize("name", ["graph_S1p", "graph_E4", "graph_C2", "graph_K4"])
def test_graphs_lie_on_their_implicit_sets(name):
    e = C.get(name)
    assert membership_residual(e.sample_points(40), e.implicit, squared=False) <= 1e-12


def test_graph_K4_is_S4_after_axis_swap():
    pts = C.get("graph_K4").sample_points(40)
    assert membership_residual(Isometry(perm=(1, 0))(pts), C.IMPLICIT["scherk_S4"]) <= 1e-12


def test_catenoid_samples_stay_in_region():
    e = C.get("catenoid_C1p")
    z = e.parameters(20)
    assert np.all(e.data.region.contains(z))


def test_dump_is_json():
    doc = json.loads(json.dumps(C.dump()))
    assert len(doc["entries"]) == 24
    s1p = next(x for x in doc["entries"] if x["name"] == "scherk_S1p")
    assert s1p["scale"] == 2.0 and s1p["region"]["name"]
    assert len(doc["non_congruent_scherk_classes"]) == 4


def test_data_in_region_rejects_unknown():
    with pytest.raises(UnknownEntry):
        C.data_in_region("scherk", "nowhere")
    with pytest.raises(UnknownEntry):
        C.data_in_region("helicoid")

import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from zmc import catalog as C
from zmc.cli import ConfigError, RunConfig, main, parse_number, parse_window
from zmc.verify import membership_residual


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    assert "scherk_S1p" in [e["name"] for e in json.loads(out)]


def test_catalog_show(capsys):
    code, out, _ = run(capsys, "catalog", "show", "scherk_S1p")
    assert code == 0
    assert json.loads(out)["implicit"]["formula"] == "sinh(t) - exp(y)*cos(x)"


def test_catalog_show_unknown(capsys):
    code, _, err = run(capsys, "catalog", "show", "nosuch")
    assert code == 2 and "unknown catalog entry 'nosuch'" in err


def test_verify_zmc(capsys):
    code, out, _ = run(capsys, "verify", "zmc", "--graph", "graph_S1p")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["max_residual"] <= 1e-10


def test_verify_census(capsys):
    code, out, _ = run(capsys, "verify", "census", "--graph", "graph_S1p",
                       "--window", "-4pi,4pi,-6,6", "--grid", "600")
    rep = json.loads(out)
    assert code == 0
    assert rep["counts"]["spacelike_components"] == 1
    assert rep["counts"]["timelike_components"] == 8
    assert rep["window"][0] == pytest.approx(-4 * np.pi)


def test_verify_membership(capsys):
    code, out, _ = run(capsys, "verify", "membership", "--surface", "enneper",
                       "--formula", "F4", "--implicit", "enneper_E4")
    assert code == 0 and json.loads(out)["passed"]


@pytest.mark.parametrize("suite", ["singular", "congruence", "umbilic", "identities"])
def test_other_suites_pass(capsys, suite):
    code, out, _ = run(capsys, "verify", suite)
    assert code == 0, out


def test_verification_failure_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "membership", "--surface", "enneper",
                       "--formula", "F3", "--implicit", "scherk_S1")
    assert code == 1 and not json.loads(out)["passed"]


def test_config_errors_exit_two(capsys):
    assert run(capsys, "verify", "census", "--graph", "scherk_S1")[0] == 2
    assert run(capsys, "verify", "zmc", "--window", "1,0,0,1")[0] == 2
    assert run(capsys, "generate", "--surface", "enneper", "--formula", "F1")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["verify", "nosuite"])
    assert info.value.code == 2


def test_generate_graph_obj(capsys, tmp_path):
    out = tmp_path / "s1p.obj"
    code, _, _ = run(capsys, "generate", "--graph", "graph_S1p", "--window", "-2pi,2pi,-3,3",
                     "--grid", "200", "--out", str(out))
    assert code == 0
    verts = [l for l in out.read_text().splitlines() if l.startswith("v ")]
    assert len(verts) == 200 * 200
    with open(out.with_suffix(".csv")) as fh:
        labels = {row["label"] for row in csv.DictReader(fh)}
    assert {"spacelike", "timelike"} <= labels


def test_generate_enneper_f4_lies_on_e4(capsys, tmp_path):
    out = tmp_path / "e.csv"
    code, _, _ = run(capsys, "generate", "--surface", "enneper", "--formula", "F4",
                     "--window", "-2,2,-2,2", "--grid", "40", "--out", str(out))
    assert code == 0
    data = np.genfromtxt(out, delimiter=",", names=True, dtype=None, encoding=None)
    pts = np.array([data["t"], data["x"], data["y"]])
    assert pts.shape[1] == 1600
    assert membership_residual(pts, C.IMPLICIT["enneper_E4"]) <= 1e-10


def test_generate_scherk_dminus(capsys, tmp_path):
    out = tmp_path / "s.ply"
    code, _, _ = run(capsys, "generate", "--surface", "scherk", "--formula", "F1",
                     "--region", "dminus", "--grid", "60", "--out", str(out))
    assert code == 0
    from zmc.meshio import read_ply
    v = read_ply(out)["vertices"]
    pts = np.array([v["t"], v["x"], v["y"]])
    assert membership_residual(pts, C.IMPLICIT["scherk_S1p"]) <= 1e-7


def test_generate_is_byte_identical(capsys, tmp_path):
    for name in ("a.obj", "b.obj"):
        run(capsys, "generate", "--surface", "scherk_S2", "--grid", "30", "--out",
            str(tmp_path / name))
    assert (tmp_path / "a.obj").read_bytes() == (tmp_path / "b.obj").read_bytes()
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_config_file_is_overridden_by_flags(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"graph": "graph_C2", "grid": 50, "tol": 1e-30}))
    code, out, _ = run(capsys, "verify", "zmc", "--config", str(cfg), "--tol", "1e-10")
    rep = json.loads(out)
    assert code == 0 and rep["details"]["graph"] == "graph_C2" and rep["grid"] == 50


def test_bad_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"colour": "red"}))
    assert run(capsys, "verify", "zmc", "--config", str(cfg))[0] == 2
    assert run(capsys, "verify", "zmc", "--config", str(tmp_path / "missing.json"))[0] == 2


def test_run_config_round_trip():
    cfg = RunConfig("verify", "census", graph="graph_S1p", window=(-1.0, 1.0, -2.0, 2.0),
                    grid=64, tol=1e-9)
    assert RunConfig.from_dict(json.loads(cfg.to_json())) == cfg


def test_number_and_window_parsing():
    assert parse_number("-4pi") == -4 * np.pi
    assert parse_number("pi/2") == np.pi / 2
    assert parse_number("3*pi") == 3 * np.pi
    assert parse_number("2.5e-1") == 0.25
    assert parse_window("-pi,pi,-2,2") == (-np.pi, np.pi, -2.0, 2.0)
    for bad in ("x", "", "1,2,3", "pi,-pi,0,1"):
        with pytest.raises(ConfigError):
            parse_window(bad) if "," in bad else parse_number(bad)


def test_export_writes_file(capsys, tmp_path):
    out = tmp_path / "cat.json"
    assert run(capsys, "export", "--out", str(out))[0] == 0
    assert len(json.loads(out.read_text())["entries"]) == 24


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "zmc", "catalog", "show", "nosuch"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "UnknownEntry" not in proc.stdout

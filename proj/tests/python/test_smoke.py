import os

import pytest

arithdyn = pytest.importorskip("_arithdyn")

DATA = os.environ.get("ARITHDYN_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def family(name):
    return os.path.join(DATA, "families", name)


def test_parse_poly():
    assert arithdyn.parse_poly("(x+y)^2 - x^2 - y^2", ["x", "y"]) == "2*x*y"


def test_heights():
    h = arithdyn.height_aff("3/2")
    assert h["M"] == "3"
    p = arithdyn.height_proj("2:4:6")
    assert p["point"] == "[1:2:3]"
    assert p["M"] == "3"


def test_evaluate_indeterminate():
    assert arithdyn.evaluate("[x^2, y*z, z^2]", "0:1:0") is None
    assert arithdyn.evaluate("[x^2, y*z, z^2]", "2:1:1") == "[4:1:1]"


def test_resolve_blowup_example():
    res = arithdyn.resolve("[x^2, y*z, z^2]")
    assert res["steps"] == 2
    assert res["pi_star"] == ["1", "1", "2"]
    assert res["phi_star"] == ["2", "1", "2"]
    assert res["r"] == "2"


def test_dratio_routes():
    assert arithdyn.dratio("[x^2, y^2, z^2]")["value"] == "1"
    assert arithdyn.dratio("[x^2, y*z, z^2]")["value"] == "2"
    assert arithdyn.dratio("[x*y, y^2, x*z]")["value"] == "infinity"


def test_delta_henon():
    d = arithdyn.delta(family("henon.json"))
    assert d["delta"] == "2/3"
    assert d["r"]["value"] == "8"


def test_check_regular():
    v = arithdyn.check_regular(family("henon.json"), 12)
    assert not v["empty"]
    assert v["witness"] == "[0:1:0:0]"


def test_orbit_and_search():
    orbit = arithdyn.orbit(family("henon.json"), "0, 0, 0")
    assert orbit["status"] == "Finite"
    assert orbit["size"] == 1
    found = arithdyn.find_preperiodic(family("squares.json"), "0", 0.7)
    assert sorted(found["points"]) == ["(-1)", "(0)", "(1)"]


def test_verify_powers_exact():
    rep = arithdyn.verify(family("powers.json"), count=100, m_max=500)
    assert rep["violations_strict"] == 0
    assert rep["fitted_c"] == 0.0

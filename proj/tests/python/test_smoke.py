import math

import pytest

import isolat


def test_spectral_rank1_five():
    r = isolat.spectral_test("rank1:5:1,2")
    assert r["dual_norm_sq"] == 5
    assert r["sigma"] == pytest.approx(5 ** -0.5, abs=1e-15)


def test_points_and_lattice():
    pts = isolat.points("rank1:5:1,2")
    assert len(pts) == 5
    assert pts[1] == pytest.approx([0.2, 0.4])
    assert isolat.lattice("fib:10")["n_points"] == 55


def test_volumes_closed_forms():
    cube = {"variant": "cube", "dim": 2}
    assert isolat.offset_volume(cube, 0.1)["value"] == pytest.approx(0.4 + math.pi * 0.01, abs=1e-12)
    disc = {"variant": "ball", "center": [0.5, 0.5], "radius": 0.3}
    assert isolat.boundary_volume(disc, 0.1)["value"] == pytest.approx(math.pi * 0.12, abs=1e-12)
    mc = isolat.offset_volume(cube, 0.1, samples=100_000, seed=3, force_mc=True)
    assert not mc["exact"]
    assert abs(mc["value"] - (0.4 + math.pi * 0.01)) <= 4 * mc["std_error"]


def test_remark_and_kappa():
    assert math.exp(isolat.log_binom_kappa_sum(2)) == pytest.approx(4 + math.pi, abs=1e-10)
    assert isolat.kappa(5) == pytest.approx(8 * math.pi**2 / 15)
    assert isolat.log_remark_lower(1000, 0.3) <= isolat.log_binom_kappa_sum(1000)


def test_discrepancy_and_norms():
    assert isolat.isodisc("rank1:5:1,2", budget=8)["j_lower"] == pytest.approx(0.5, abs=1e-8)
    rows = isolat.distance_norms("scaled:4:1", gammas=[1])
    assert rows[0]["value"] == pytest.approx(5 / 64, abs=1e-12)
    cr = isolat.covering_radius("rank1:5:1,2")
    assert cr["lb"] <= 5 ** -0.5 <= cr["ub"]
    assert isolat.verify_thm1("fib:8", budget=8)["verdict"] == "PASS"


def test_campaign_is_deterministic(tmp_path):
    spec = {"corpus": ["fib:6", "rank1:5:1,2"], "checks": ["thm1", "prop1", "remark"], "budget": 8}
    a = isolat.run_campaign(spec, workers=1, out_dir=str(tmp_path / "a"))
    b = isolat.run_campaign(spec, workers=4)
    assert a == b
    assert a["summary"]["FAIL"] == 0
    assert (tmp_path / "a" / "thm1.csv").read_text().startswith("id,d,N,sigma,j_lower,bound,verdict")


def test_errors_propagate():
    with pytest.raises(RuntimeError):
        isolat.spectral_test("no-such-lattice-file")
    with pytest.raises(ValueError):
        isolat.offset_volume({"variant": "cube", "dim": 2}, 0.1, side="sideways")
    with pytest.raises(ValueError):
        isolat.run_campaign({"checks": ["nope"]})

import math

import pytest

import heisenberg_cr as hc


def test_geometry_values():
    assert hc.koranyi(hc.HRadial(2.0, 4.0)) == 80.0
    q = hc.cayley_chart(hc.HRadial(1.0, 1.0))
    assert q.r == pytest.approx(math.pi / 4)
    assert q.theta == pytest.approx(3 * math.pi / 4)
    k = hc.kelvin_radial(hc.HRadial(1.0, 1.0))
    assert k.r == pytest.approx(1 / math.sqrt(5))
    assert k.t == pytest.approx(0.2)
    zeta = hc.cayley(hc.HPoint([1.0], 1.0))
    assert zeta[0] == pytest.approx(0.5 + 0.5j)
    assert zeta[1] == pytest.approx(-0.5 + 0.5j)


def test_errors_are_value_errors():
    with pytest.raises(hc.DomainError):
        hc.cayley_chart_inverse(hc.SCyl(0.0, math.pi))
    with pytest.raises(ValueError):
        hc.kelvin(hc.HPoint([0.0], 0.0))


def test_operators_and_green():
    assert hc.sphere_harmonicity_residual(hc.SCyl(0.7, 1.0), 2) < 1e-6
    assert hc.heisenberg_harmonicity_residual(hc.HRadial(1.0, 1.0), 1) < 1e-8
    assert hc.green_heisenberg_pole(hc.HRadial(1.0, 0.0), 1) == pytest.approx(1 / (8 * math.pi))
    assert hc.green_relation_ratio(hc.SCyl(0.6, 2.0), 2) == pytest.approx(4.0)
    drift = hc.n_process_drift(hc.HRadial(1.0, 0.0), 1)
    assert drift == pytest.approx((-1.5, 0.0))
    assert hc.ks_two_sample([1, 2, 3], [1.5, 2.5, 3.5])[0] == pytest.approx(1 / 3)


def test_simulation_is_reproducible():
    cfg = hc.SimConfig()
    cfg.horizon = 0.1
    a = hc.simulate_radial_heisenberg(hc.HRadial(1.0, 0.0), cfg, 5)
    b = hc.simulate_radial_heisenberg(hc.HRadial(1.0, 0.0), cfg, 5)
    assert a["r"] == b["r"]
    assert len(a["times"]) == 101
    h = hc.simulate_h_process(hc.SCyl(0.5, 2.0), cfg, 0)
    assert set(h) == {"times", "r_s", "theta", "absorption_time"}


def test_short_pushforward():
    cfg = hc.SimConfig()
    cfg.horizon = 0.05
    cfg.paths = 500
    rep = hc.pushforward_cayley(hc.HRadial(0.0, 0.0), [0.05], cfg)
    assert rep["pass"]
    assert set(rep["points"][0]["ks"]) == {"r_s", "theta", "north_weight"}


def test_run_command(tmp_path):
    code = hc.run_command("verify", "geometry", {"out": str(tmp_path), "geometry.samples": "200"})
    assert code == 0
    assert (tmp_path / "manifest.txt").exists()
    assert hc.run_command("verify", "geometry", {"out": str(tmp_path / "missing")}) == 3
    with pytest.raises(hc.ConfigError):
        hc.run_command("verify", "geometry", {"no.such.key": "1"})

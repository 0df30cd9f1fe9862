import math

import numpy as np
import pytest

import qdev


def test_presets():
    assert qdev.presets() == ["free_particle", "resistor", "rtd_a", "rtd_b"]


def test_dispersion_roots_on_unit_circle():
    plus, minus = qdev.dispersion_roots(0.5, 0.0, 1.0, 0.1)
    assert abs(abs(plus) - 1.0) < 1e-14
    assert abs(plus * minus - 1.0) < 1e-14
    assert abs(plus - complex(1197.5, math.sqrt(7194.0)) / 1200.5) < 1e-15


def test_free_particle_is_a_plane_wave():
    n = 100
    s = qdev.solve_scattering([0.0] * (n + 1), 10.0, 0.5, 0.5)
    psi = s["psi"]
    assert psi.shape == (n + 1,)
    assert np.max(np.abs(np.abs(psi) - 1.0)) < 1e-11
    assert s["transmission"] == pytest.approx(1.0)


def test_right_incidence_and_bad_arguments():
    s = qdev.solve_scattering([0.0] * 41, 10.0, 0.5, 0.3, scheme="adtbc", incidence="right")
    assert s["transmission"] == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(qdev.InvalidArgument):
        qdev.solve_scattering([0.0] * 41, 10.0, 0.5, 0.3, incidence="up")
    with pytest.raises(qdev.PreconditionViolated):
        qdev.solve_scattering([0.0] * 41, 10.0, 0.5, -0.1)


def test_free_particle_orders():
    r = qdev.free_particle_convergence("d4tbc", [100, 200, 400])
    assert len(r["orders"]) == 2
    assert all(abs(o - 4.0) < 0.05 for o in r["orders"])


def test_prescribed_rtd_single_bias():
    r = qdev.solve_device("rtd_a", 0.1)
    assert r["converged"]
    assert r["iterations"] == 1
    assert r["potential_eV"][-1] == pytest.approx(-0.1, abs=1e-9)
    assert r["current_A_cm2"] > 0.0
    assert len(r["x_nm"]) == 271


def test_transmission_between_zero_and_one():
    e = np.linspace(0.01, 0.4, 40)
    t = qdev.transmission("rtd_a", e.tolist())
    assert t.shape == (40,)
    assert np.all((t >= 0.0) & (t <= 1.0))


def test_config_errors_and_round_trip(tmp_path):
    text = qdev.effective_config("device: {preset: resistor}\n")
    assert "fermi_level_eV: 0.318" in text
    assert qdev.effective_config(text) == text
    with pytest.raises(qdev.ParseError):
        qdev.effective_config("device: {preset: resistor, colour: blue}\n")
    with pytest.raises(qdev.ValidationError):
        qdev.effective_config("device: {preset: resistor}\ngrid: {nx: -1}\n")
    with pytest.raises(qdev.UnknownPreset):
        qdev.effective_config("device: {preset: diode}\n")


def test_run_config_writes_files(tmp_path):
    files = qdev.run_config("device: {preset: free_particle}\n", str(tmp_path))
    names = sorted(p.rsplit("/", 1)[-1] for p in files)
    assert names == ["psi.csv", "summary.json"]
    assert (tmp_path / "psi.csv").read_text().startswith("x_nm,re_psi,im_psi,abs_psi\n")


def test_format_double():
    assert qdev.format_double(0.1) == "0.1"
    assert qdev.format_double(-0.0) == "0"
    assert float(qdev.format_double(1 / 3)) == 1 / 3

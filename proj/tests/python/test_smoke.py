import cmath
import math

import pytest

import znwedge


def test_mass_spectrum_closed_form():
    model = znwedge.Model(4)
    masses = model.masses()
    assert len(masses) == 3
    assert masses[0] == pytest.approx(1.0)
    assert masses[1] == pytest.approx(math.sqrt(2.0), rel=1e-12)
    assert masses[2] == pytest.approx(1.0, rel=1e-12)


def test_antiparticle():
    assert znwedge.antiparticle(5, 2) == 3
    assert znwedge.antiparticle(3, 1) == 2


def test_unitarity_and_crossing_spot():
    model = znwedge.Model(3)
    dev, ok = model.check_unitarity(1, 1, points=50)
    assert ok and dev < 1e-10
    dev, ok = model.check_crossing(1, 2)
    assert ok and dev < 1e-8
    s = model.s_eval(1, 1, 0.7)
    assert abs(abs(s) - 1.0) < 1e-12
    assert model.s_eval(1, 1, 0.7 + 0.0j) == znwedge.s11(3, 0.7 + 0.0j)


def test_pole_registry():
    model = znwedge.Model(3)
    poles = model.poles(1, 1)
    assert len(poles) == 1
    assert poles[0] == pytest.approx(2j * math.pi / 3, abs=1e-10)
    res = model.residue(1, 1, poles[0])
    assert res == pytest.approx(1j * math.sqrt(3.0), rel=1e-6)


def test_fusion_counts_and_angles():
    assert len(znwedge.Model(3).fusion_processes()) == 2
    assert len(znwedge.Model(4).fusion_processes()) == 4
    p11 = znwedge.Model(3).fusion_processes()[0]
    assert p11["alpha"] == 1 and p11["beta"] == 1 and p11["gamma"] == 2
    assert p11["theta_sum"] == pytest.approx(2 * math.pi / 3, rel=1e-12)
    a, b, s = znwedge.fusion_angles(1.0, 1.0, 1.0)
    assert a == pytest.approx(math.pi / 3, rel=1e-12)
    assert s == pytest.approx(a + b, rel=1e-15)


def test_out_of_range_component_raises():
    model = znwedge.Model(3)
    with pytest.raises(znwedge.ZnwedgeError):
        model.s_eval(1, 7, 0.5 + 0.0j)

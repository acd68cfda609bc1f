"""Cauchy-data factories."""

from __future__ import annotations

import numpy as np
import pytest

from ergosim.initial_data import DataSpec, SupportError, build


def test_flare_ignores_potential():
    x = np.linspace(-40.0, 40.0, 801)
    v_profile = np.sin(x) + 2.0
    u, v = build(DataSpec(kind="flare", x0=5.0, width=3.0), x, v_profile)
    assert np.all(u == 0.0)
    assert np.allclose(v, np.exp(-((x - 5.0) ** 2) / 9.0), atol=1e-15)


def test_oscillating_gaussian_time_derivative_vanishes():
    x = np.linspace(-40.0, 40.0, 801)
    v_profile = np.cos(x) * 0.3
    spec = DataSpec(kind="oscillating-gaussian", omega=3.0, x0=0.0, width=2.0)
    u, v = build(spec, x, v_profile)
    # phi1 = 0 means v = -iV u, i.e. dt_phi = v + iVu = 0
    assert np.allclose(v + 1j * v_profile * u, 0.0, atol=1e-15)


def test_wave_packet_zero_frequency_matches_space_derivative():
    x = np.linspace(-30.0, 30.0, 1501)
    spec = DataSpec(kind="wave-packet", omega=0.0, x0=4.0, width=1.5, phase="plain")
    u, v = build(spec, x, np.zeros_like(x))
    analytic = -2.0 * (x - 4.0) / 1.5**2 * u
    assert np.allclose(v, analytic, rtol=1e-13, atol=1e-16)


def test_phase_conventions():
    x = np.linspace(-80.0, 80.0, 4001)
    plain = DataSpec(kind="wave-packet", omega=2.0, x0=0.0, width=5.0, phase="plain")
    scaled = DataSpec(kind="wave-packet", omega=2.0, x0=0.0, width=5.0, phase="scaled")
    u_plain, _ = build(plain, x, np.zeros_like(x))
    u_scaled, _ = build(scaled, x, np.zeros_like(x))
    assert not np.allclose(u_plain, u_scaled)
    j = 2300
    assert u_scaled[j] == pytest.approx(
        np.exp(1j * 2.0 / 5.0 * x[j] - x[j] ** 2 / 25.0), rel=1e-12
    )
    # conventions coincide at unit width
    a = DataSpec(kind="wave-packet", omega=2.0, x0=0.0, width=1.0, phase="plain")
    b = DataSpec(kind="wave-packet", omega=2.0, x0=0.0, width=1.0, phase="scaled")
    x2 = np.linspace(-20.0, 20.0, 401)
    assert np.array_equal(build(a, x2, np.zeros_like(x2))[0], build(b, x2, np.zeros_like(x2))[0])


def test_support_violation_raises():
    x = np.linspace(-10.0, 10.0, 201)
    with pytest.raises(SupportError):
        build(DataSpec(kind="wave-packet", x0=8.0, width=2.0), x, np.zeros_like(x))
    # loosening the tolerance admits the same data
    build(DataSpec(kind="wave-packet", x0=8.0, width=2.0, support_tol=0.7), x, np.zeros_like(x))


def test_spec_validation():
    with pytest.raises(ValueError):
        DataSpec(kind="ringdown")
    with pytest.raises(ValueError):
        DataSpec(kind="flare", width=0.0)
    with pytest.raises(ValueError):
        DataSpec(kind="flare", phase="chirped")
    with pytest.raises(ValueError):
        DataSpec(kind="flare", support_tol=0.0)

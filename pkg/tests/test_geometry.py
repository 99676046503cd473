"""Geometry, wave-vector algebra and channel model tests."""
import numpy as np
import pytest

from kroncb import (
    ArrayGeometry,
    direction_wavenumbers,
    dispersion_kz,
    fresnel_range,
    los_channel,
    near_field_channel,
    near_field_gradients,
    steering_from_wavenumbers,
)
from kroncb.geometry import focus_distances


def test_geometry_validation():
    with pytest.raises(ValueError):
        ArrayGeometry(0, 8, 0.5, 0.5, 1.0)
    with pytest.raises(ValueError):
        ArrayGeometry(8, 8, -0.5, 0.5, 1.0)
    with pytest.raises(ValueError):
        ArrayGeometry(8, 8, 0.5, 0.5, 0.0)


def test_geometry_properties(geom_half):
    assert geom_half.alpha1 == 0.5
    assert geom_half.alpha2 == 0.5
    assert geom_half.k == pytest.approx(2 * np.pi)
    assert geom_half.size == 64
    assert geom_half.aperture == pytest.approx(np.hypot(3.5, 3.5))
    np.testing.assert_allclose(geom_half.center(), [1.75, 1.75, 0.0])


def test_element_positions_x_major(geom_half):
    pos = geom_half.element_positions()
    assert pos.shape == (64, 3)
    # index i1*n2 + i2 -> (i1*d1, i2*d2, 0)
    np.testing.assert_allclose(pos[8 * 2 + 3], [1.0, 1.5, 0.0])
    np.testing.assert_allclose(pos[:, 2], 0.0)


def test_los_channel_oracle(geom_half):
    theta, phi = np.radians(50.0), np.radians(120.0)
    h = los_channel(geom_half, theta, phi)
    np.testing.assert_allclose(np.abs(h), 1.0, atol=1e-12)
    kx, ky = direction_wavenumbers(geom_half.k, theta, phi)
    pos = geom_half.element_positions()
    expect = np.exp(-1j * (kx * pos[:, 0] + ky * pos[:, 1]))
    np.testing.assert_allclose(h, expect, atol=1e-12)


def test_steering_conjugate_matches_los(geom_half):
    """steering(kx, ky) is the conjugate match of the LOS channel."""
    theta, phi = np.radians(35.0), np.radians(200.0)
    kx, ky = direction_wavenumbers(geom_half.k, theta, phi)
    h = los_channel(geom_half, theta, phi)
    w = steering_from_wavenumbers(geom_half, kx, ky)
    assert np.abs(np.sum(w * h)) == pytest.approx(geom_half.size, rel=1e-12)


def test_dispersion_kz():
    k = 2 * np.pi
    kz, prop = dispersion_kz(k, 0.6 * k, 0.3 * k)
    assert prop
    assert kz ** 2 + (0.6 * k) ** 2 + (0.3 * k) ** 2 == pytest.approx(k * k)
    decay, prop = dispersion_kz(k, k, 0.5 * k)
    assert not prop
    assert decay == pytest.approx(k * np.sqrt(1.25 - 1))
    with pytest.raises(ValueError):
        dispersion_kz(0.0, 1.0, 1.0)


def test_focus_distances_oracle(geom_half, rng):
    r, theta, phi = 20.0, np.radians(30.0), np.radians(75.0)
    focus = np.array([r * np.sin(theta) * np.cos(phi),
                      r * np.sin(theta) * np.sin(phi),
                      r * np.cos(theta)])
    x = rng.uniform(0, 4, 10)
    y = rng.uniform(0, 4, 10)
    d = focus_distances(geom_half, r, theta, phi, x, y)
    expect = np.linalg.norm(np.column_stack([x, y, np.zeros(10)]) - focus, axis=1)
    np.testing.assert_allclose(d, expect, rtol=1e-12)


def test_near_field_channel_phase(geom_half):
    r, theta, phi = 30.0, np.radians(20.0), np.radians(310.0)
    h = near_field_channel(geom_half, r, theta, phi)
    np.testing.assert_allclose(np.abs(h), 1.0, atol=1e-12)
    pos = geom_half.element_positions()
    dist = focus_distances(geom_half, r, theta, phi, pos[:, 0], pos[:, 1])
    np.testing.assert_allclose(h, np.exp(-1j * geom_half.k * dist), atol=1e-12)
    with pytest.raises(ValueError):
        near_field_channel(geom_half, -1.0, theta, phi)


def test_near_field_gradients_finite_difference(geom_half, rng):
    """Closed-form gradients against a central-difference oracle."""
    h = 1e-4 * geom_half.wavelength
    k = geom_half.k
    for _ in range(50):
        r = rng.uniform(2.0, 100.0)
        theta = np.arccos(rng.uniform(0.05, 1.0))
        phi = rng.uniform(0, 2 * np.pi)
        x, y = rng.uniform(-5, 5, 2)
        kx, ky, kt = near_field_gradients(geom_half, (r, theta, phi), x, y)
        dpx = focus_distances(geom_half, r, theta, phi, x + h, y) \
            - focus_distances(geom_half, r, theta, phi, x - h, y)
        dpy = focus_distances(geom_half, r, theta, phi, x, y + h) \
            - focus_distances(geom_half, r, theta, phi, x, y - h)
        assert kx == pytest.approx(k * dpx / (2 * h), abs=1e-6 * k)
        assert ky == pytest.approx(k * dpy / (2 * h), abs=1e-6 * k)
        assert kt == pytest.approx(np.hypot(kx, ky), abs=1e-12 * k)


def test_near_field_gradients_bounded_and_zero_below_focus(geom_half):
    k = geom_half.k
    # directly beneath a broadside focus the transverse gradient vanishes
    kx, ky, kt = near_field_gradients(geom_half, (10.0, 0.0, 0.0), 0.0, 0.0)
    assert kx == 0.0 and ky == 0.0 and kt == 0.0
    # kt never exceeds k, even far outside the focus footprint
    xs = np.linspace(-100, 100, 401)
    _, _, kt = near_field_gradients(geom_half, (5.0, np.radians(60), 1.0), xs, xs)
    assert np.all(kt <= k + 1e-12)


def test_near_field_far_limit_matches_plane_wave(geom_half):
    """At r = 1e6 lambda the spherical gradients collapse to plane-wave ones."""
    theta, phi = np.radians(47.0), np.radians(123.0)
    r = 1e6 * geom_half.wavelength
    kx_pw, ky_pw = direction_wavenumbers(geom_half.k, theta, phi)
    # probe across the physical aperture
    kx, ky, _ = near_field_gradients(geom_half, (r, theta, phi),
                                     np.linspace(0, 3.5, 8), np.linspace(0, 3.5, 8))
    # sign: the gradient points away from the focus projection
    assert np.all(np.abs(-kx - kx_pw) < 1e-3 * geom_half.k)
    assert np.all(np.abs(-ky - ky_pw) < 1e-3 * geom_half.k)


def test_fresnel_range():
    inner, outer = fresnel_range(2.0, 0.1)
    assert inner == pytest.approx(0.62 * np.sqrt(8.0 / 0.1))
    assert outer == pytest.approx(80.0)
    assert inner < outer
    with pytest.raises(ValueError):
        fresnel_range(1.0, 0.0)

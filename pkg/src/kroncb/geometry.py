"""Array geometry, wave-vector algebra and channel generation.

The array lies in the x-o-y plane with antenna (0, 0) at the origin and
the grid filling the first quadrant: antenna (i1, i2) sits at
(i1*d1, i2*d2, 0). Channel vectors use the same x-major ordering as
codebook.generate_codeword.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform planar array: counts, spacings and carrier wavelength (meters)."""

    n1: int
    n2: int
    d1: float
    d2: float
    wavelength: float

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError("antenna counts must be >= 1")
        if self.d1 <= 0 or self.d2 <= 0 or self.wavelength <= 0:
            raise ValueError("spacings and wavelength must be positive")

    @property
    def alpha1(self) -> float:
        """Normalized x spacing d1/wavelength."""
        return self.d1 / self.wavelength

    @property
    def alpha2(self) -> float:
        """Normalized y spacing d2/wavelength."""
        return self.d2 / self.wavelength

    @property
    def k(self) -> float:
        """Free-space wavenumber 2*pi/wavelength (rad/m)."""
        return 2 * np.pi / self.wavelength

    @property
    def aperture(self) -> float:
        """Maximum aperture: the array diagonal (m)."""
        return float(np.hypot((self.n1 - 1) * self.d1, (self.n2 - 1) * self.d2))

    @property
    def size(self) -> int:
        return self.n1 * self.n2

    def element_positions(self) -> np.ndarray:
        """(n1*n2, 3) Cartesian antenna positions, x-major ordering."""
        i1, i2 = np.meshgrid(np.arange(self.n1), np.arange(self.n2), indexing="ij")
        pos = np.zeros((self.size, 3))
        pos[:, 0] = (i1 * self.d1).ravel()
        pos[:, 1] = (i2 * self.d2).ravel()
        return pos

    def center(self) -> np.ndarray:
        """Geometric center of the array in the x-o-y plane."""
        return np.array([(self.n1 - 1) * self.d1 / 2, (self.n2 - 1) * self.d2 / 2, 0.0])


def direction_wavenumbers(k: float, theta: float, phi: float) -> tuple[float, float]:
    """Transverse wavenumbers (kx, ky) of a plane wave from (theta, phi)."""
    return k * np.sin(theta) * np.cos(phi), k * np.sin(theta) * np.sin(phi)


def los_channel(geometry: ArrayGeometry, theta: float, phi: float) -> np.ndarray:
    """Lossless far-field LOS channel toward elevation theta, azimuth phi (radians).

    Gain at antenna (i1, i2) is exp(-j*(kx*i1*d1 + ky*i2*d2)); all gains
    unit modulus.
    """
    kx, ky = direction_wavenumbers(geometry.k, theta, phi)
    i1 = np.arange(geometry.n1)
    i2 = np.arange(geometry.n2)
    phase = kx * geometry.d1 * i1[:, None] + ky * geometry.d2 * i2[None, :]
    return np.exp(-1j * phase).ravel()


def steering_from_wavenumbers(geometry: ArrayGeometry, kx: float, ky: float) -> np.ndarray:
    """Precoding with explicit phase gradients kx, ky (rad/m).

    Conjugate-matched to los_channel when (kx, ky) come from a physical
    direction; evanescent (kt > k) gradients are allowed on purpose.
    """
    i1 = np.arange(geometry.n1)
    i2 = np.arange(geometry.n2)
    phase = kx * geometry.d1 * i1[:, None] + ky * geometry.d2 * i2[None, :]
    return np.exp(1j * phase).ravel()


def dispersion_kz(k: float, kx: float, ky: float) -> tuple[float, bool]:
    """Solve the free-space dispersion relation kx^2+ky^2+kz^2 = k^2 for kz.

    Returns (kz, True) with the propagating real kz when kx^2+ky^2 <= k^2,
    otherwise (decay constant, False) where the decay constant is the
    magnitude of the imaginary kz of the evanescent mode.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    kt2 = kx * kx + ky * ky
    if kt2 <= k * k:
        return float(np.sqrt(k * k - kt2)), True
    return float(np.sqrt(kt2 - k * k)), False


def focus_distances(geometry: ArrayGeometry, r: float, theta: float, phi: float,
                    x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Distance from planar points (x, y, 0) to the focus at spherical (r, theta, phi)."""
    dx = x - r * np.sin(theta) * np.cos(phi)
    dy = y - r * np.sin(theta) * np.sin(phi)
    z0 = r * np.cos(theta)
    return np.sqrt(dx * dx + dy * dy + z0 * z0)


def near_field_channel(geometry: ArrayGeometry, r: float, theta: float, phi: float) -> np.ndarray:
    """Spherical-phase channel focusing at (r, theta, phi); phase only, no amplitude taper."""
    if r <= 0:
        raise ValueError("focus distance must be positive")
    i1, i2 = np.meshgrid(np.arange(geometry.n1), np.arange(geometry.n2), indexing="ij")
    x = i1 * geometry.d1
    y = i2 * geometry.d2
    dist = focus_distances(geometry, r, theta, phi, x, y)
    return np.exp(-1j * geometry.k * dist).ravel()


def near_field_gradients(geometry: ArrayGeometry, focus: tuple[float, float, float],
                         x, y) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Closed-form spatial phase gradients of the spherical wavefront.

    focus is (r, theta, phi); (x, y) is the probe point in the array
    plane (scalars or arrays). Returns (kx, ky, kt). kt never exceeds
    the free-space wavenumber; directly beneath the focus the gradient
    vanishes (the sgn(0) = 0 convention).
    """
    r, theta, phi = focus
    if r <= 0:
        raise ValueError("focus distance must be positive")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dx = x - r * np.sin(theta) * np.cos(phi)
    dy = y - r * np.sin(theta) * np.sin(phi)
    z0 = r * np.cos(theta)
    dist = np.sqrt(dx * dx + dy * dy + z0 * z0)
    # k*dx/dist is the quotient form of the sgn-based derivative and
    # yields exactly zero at dx = 0.
    k = geometry.k
    kx = k * dx / dist
    ky = k * dy / dist
    kt = k * np.hypot(dx, dy) / dist
    return kx, ky, kt


def fresnel_range(aperture: float, wavelength: float) -> tuple[float, float]:
    """Radiative near-field (Fresnel) bounds [0.62*sqrt(D^3/lambda), 2*D^2/lambda)."""
    if aperture < 0 or wavelength <= 0:
        raise ValueError("aperture must be >= 0 and wavelength > 0")
    inner = 0.62 * np.sqrt(aperture ** 3 / wavelength)
    outer = 2 * aperture ** 2 / wavelength
    return float(inner), float(outer)

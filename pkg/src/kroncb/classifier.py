"""Evanescent/regular codeword classification and zone analysis.

A codeword with shifted index (l', m') on an array with normalized
spacings (alpha1, alpha2) carries transverse wavenumbers
kx = l'*k/(alpha1*n1*o1), ky = m'*k/(alpha2*n2*o2). It is evanescent
when hypot(kx, ky) exceeds the free-space wavenumber k; such a codeword
cannot form a directional far-field beam. Equality (grazing beam,
theta = 90 deg) counts as regular.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from .codebook import CodebookConfig, check_index, shift_index
from .geometry import ArrayGeometry


@dataclass(frozen=True)
class ZoneStats:
    """Counts of evanescent codewords and the redundancy fraction."""

    total: int
    evanescent: int

    @property
    def redundancy(self) -> float:
        return self.evanescent / self.total


@dataclass(frozen=True)
class EvanescentMask:
    """Boolean evanescent classification over the full (l, m) index grid.

    flags[l, m] is True when codeword (l, m) is evanescent for the
    given normalized spacings.
    """

    cfg: CodebookConfig
    alpha1: float
    alpha2: float
    flags: np.ndarray

    def stats(self) -> ZoneStats:
        return ZoneStats(total=self.flags.size, evanescent=int(self.flags.sum()))

    def shifted_layout(self) -> np.ndarray:
        """flags rearranged with zero frequency at the grid center (DFT shift)."""
        return np.fft.fftshift(self.flags)


def _shifted_ratio_grids(cfg: CodebookConfig, alpha1: float, alpha2: float):
    """Grids of l'/(alpha1*n1*o1) and m'/(alpha2*n2*o2) over all indices."""
    l = np.arange(cfg.size1)
    m = np.arange(cfg.size2)
    ls = np.where(2 * l <= cfg.size1, l, l - cfg.size1)
    ms = np.where(2 * m <= cfg.size2, m, m - cfg.size2)
    u = ls / (alpha1 * cfg.size1)
    v = ms / (alpha2 * cfg.size2)
    return u[:, None], v[None, :]


def is_evanescent(cfg: CodebookConfig, l: int, m: int, alpha1: float, alpha2: float) -> bool:
    """True iff codeword (l, m) cannot form a directional beam at these spacings."""
    check_index(cfg, l, m)
    if alpha1 <= 0 or alpha2 <= 0:
        raise ValueError("normalized spacings must be positive")
    ls, ms = shift_index(cfg, l, m)
    u = ls / (alpha1 * cfg.size1)
    v = ms / (alpha2 * cfg.size2)
    return bool(np.hypot(u, v) > 1.0)


def build_mask(cfg: CodebookConfig, alpha1: float, alpha2: float) -> EvanescentMask:
    """Classify every codeword of cfg; True flags mark the evanescent zone."""
    if alpha1 <= 0 or alpha2 <= 0:
        raise ValueError("normalized spacings must be positive")
    u, v = _shifted_ratio_grids(cfg, alpha1, alpha2)
    flags = np.hypot(u, v) > 1.0
    flags.setflags(write=False)
    return EvanescentMask(cfg=cfg, alpha1=alpha1, alpha2=alpha2, flags=flags)


def redundancy_stats(mask: EvanescentMask) -> ZoneStats:
    return mask.stats()


def beam_direction(cfg: CodebookConfig, l: int, m: int,
                   alpha1: float, alpha2: float) -> tuple[float, float] | None:
    """Far-field beam direction (theta, phi) in radians, or None if evanescent.

    phi is quadrant-aware (atan2) so beams with negative shifted indices
    land in the correct azimuth quadrant; broadside returns (0, 0).
    """
    if is_evanescent(cfg, l, m, alpha1, alpha2):
        return None
    ls, ms = shift_index(cfg, l, m)
    u = ls / (alpha1 * cfg.size1)
    v = ms / (alpha2 * cfg.size2)
    if ls == 0 and ms == 0:
        return 0.0, 0.0
    theta = float(np.arcsin(min(np.hypot(u, v), 1.0)))
    phi = float(np.arctan2(v, u)) % (2 * np.pi)
    return theta, phi


def codeword_wavenumbers(cfg: CodebookConfig, l: int, m: int,
                         alpha1: float, alpha2: float, k: float) -> tuple[float, float, float]:
    """Transverse wavenumbers (kx, ky, kt) of codeword (l, m) in rad/m."""
    check_index(cfg, l, m)
    if k <= 0:
        raise ValueError("k must be positive")
    ls, ms = shift_index(cfg, l, m)
    kx = ls * k / (alpha1 * cfg.size1)
    ky = ms * k / (alpha2 * cfg.size2)
    # hypot of the dimensionless ratios keeps the kt > k comparison
    # bit-identical to is_evanescent.
    kt = k * np.hypot(ls / (alpha1 * cfg.size1), ms / (alpha2 * cfg.size2))
    return float(kx), float(ky), float(kt)


def nyquist_limits(geometry: ArrayGeometry) -> tuple[float, float]:
    """Highest spatial frequencies (ks_x, ks_y) = (k/(2*alpha1), k/(2*alpha2)) supported."""
    return geometry.k / (2 * geometry.alpha1), geometry.k / (2 * geometry.alpha2)


def supported_k(geometry: ArrayGeometry, phi: float) -> float:
    """Largest transverse wavenumber sampled without aliasing along azimuth phi.

    Distance from the origin to the border of the Nyquist rectangle
    {|kx| <= ks_x, |ky| <= ks_y}; maximal along the grid diagonal.
    """
    ks_x, ks_y = nyquist_limits(geometry)
    cx = abs(np.cos(phi))
    sy = abs(np.sin(phi))
    tx = ks_x / cx if cx > 0 else np.inf
    ty = ks_y / sy if sy > 0 else np.inf
    return float(min(tx, ty))


def wideband_masks(cfg: CodebookConfig, d1: float, d2: float, fc: float,
                   offsets_hz) -> list[tuple[float, EvanescentMask, ZoneStats]]:
    """Per-sub-carrier evanescent masks for a fixed physical array.

    The normalized spacings scale with frequency, alpha_i(f) = d_i*f/c,
    so higher sub-carriers see a smaller evanescent zone.
    """
    results = []
    for offset in offsets_hz:
        f = fc + offset
        if f <= 0:
            raise ValueError(f"non-positive frequency {f}")
        a1 = d1 * f / SPEED_OF_LIGHT
        a2 = d2 * f / SPEED_OF_LIGHT
        mask = build_mask(cfg, a1, a2)
        results.append((f, mask, mask.stats()))
    return results


def project_channel(cfg: CodebookConfig, gains: np.ndarray) -> np.ndarray:
    """Normalized correlation of a channel with every codeword of cfg.

    Returns grid[l, m] = |<v_lm, h>|^2 / (||v_lm||^2 * ||h||^2), computed
    with a zero-padded 2-D FFT. Values lie in [0, 1] and sum to 1 for
    o1 = o2 = 1 (complete orthogonal basis).
    """
    gains = np.asarray(gains)
    if gains.shape != (cfg.n1 * cfg.n2,):
        raise ValueError(f"expected {cfg.n1 * cfg.n2} gains, got shape {gains.shape}")
    grid = gains.reshape(cfg.n1, cfg.n2)
    spectrum = np.fft.fft2(grid, s=(cfg.size1, cfg.size2))
    energy = np.vdot(gains, gains).real
    if energy == 0:
        raise ValueError("zero channel vector")
    return np.abs(spectrum) ** 2 / (cfg.n1 * cfg.n2 * energy)


def regular_or_boundary(mask: EvanescentMask) -> np.ndarray:
    """Cells that are regular or within Chebyshev distance 1 of the regular zone.

    Adjacency is periodic in (l, m) since the index grid is a DFT grid.
    """
    regular = ~mask.flags
    grown = regular.copy()
    for dl in (-1, 0, 1):
        for dm in (-1, 0, 1):
            grown |= np.roll(regular, (dl, dm), axis=(0, 1))
    return grown

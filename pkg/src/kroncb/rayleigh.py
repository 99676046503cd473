"""Rayleigh channel generation and low-pass spatial filtering.

The filter projects a channel onto the regular-zone subspace: take the
unitary 2-D DFT of the n1 x n2 gain grid (the o1 = o2 = 1 codeword
basis), zero every coefficient whose shifted index is evanescent for
the given spacings, and transform back. Boundary cells (grazing beams)
are kept.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codebook import CodebookConfig
from .classifier import build_mask


@dataclass(frozen=True)
class RayleighConfig:
    n1: int
    n2: int
    alpha1: float
    alpha2: float
    seed: int
    realizations: int

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError("antenna counts must be >= 1")
        if self.realizations < 0:
            raise ValueError("realizations must be >= 0")


def generate_rayleigh(cfg: RayleighConfig) -> np.ndarray:
    """(realizations, n1*n2) i.i.d. circularly-symmetric CN(0, 1) gains.

    Deterministic for a fixed seed; each realization draws from its own
    seed-derived substream so batch size does not change earlier rows.
    """
    out = np.empty((cfg.realizations, cfg.n1 * cfg.n2), dtype=complex)
    for r in range(cfg.realizations):
        rng = np.random.default_rng([cfg.seed, r])
        re, im = rng.standard_normal((2, cfg.n1 * cfg.n2))
        out[r] = (re + 1j * im) / np.sqrt(2)
    return out


def filter_evanescent(gains: np.ndarray, n1: int, n2: int,
                      alpha1: float, alpha2: float,
                      keep: np.ndarray | None = None) -> np.ndarray:
    """Remove evanescent spatial-frequency components from channel gains.

    gains: (n1*n2,) vector or (batch, n1*n2) array. keep optionally
    overrides the default regular-zone mask with a user-supplied
    boolean (n1, n2) grid of coefficients to retain (for prior
    spatial-frequency knowledge).
    """
    gains = np.asarray(gains, dtype=complex)
    single = gains.ndim == 1
    batch = gains[None, :] if single else gains
    if batch.shape[1] != n1 * n2:
        raise ValueError(f"expected {n1 * n2} gains per channel, got {batch.shape[1]}")
    if keep is None:
        mask = build_mask(CodebookConfig(n1, n2, 1, 1), alpha1, alpha2)
        keep = ~mask.flags
    else:
        keep = np.asarray(keep, dtype=bool)
        if keep.shape != (n1, n2):
            raise ValueError(f"keep mask must have shape ({n1}, {n2})")
    grids = batch.reshape(-1, n1, n2)
    spectrum = np.fft.fft2(grids, norm="ortho")
    spectrum *= keep[None, :, :]
    filtered = np.fft.ifft2(spectrum, norm="ortho").reshape(batch.shape)
    return filtered[0] if single else filtered


def removed_energy_fraction(before: np.ndarray, after: np.ndarray) -> np.ndarray:
    """Per-channel fraction of energy removed by the filter."""
    before = np.atleast_2d(before)
    after = np.atleast_2d(after)
    e_in = np.sum(np.abs(before) ** 2, axis=1)
    e_out = np.sum(np.abs(after) ** 2, axis=1)
    return np.squeeze((e_in - e_out) / e_in)


def filter_summary(cfg: RayleighConfig) -> dict:
    """Generate, filter and summarize removed-energy statistics."""
    channels = generate_rayleigh(cfg)
    filtered = filter_evanescent(channels, cfg.n1, cfg.n2, cfg.alpha1, cfg.alpha2)
    frac = np.atleast_1d(removed_energy_fraction(channels, filtered))
    return {
        "removed_energy_fraction_mean": float(frac.mean()) if frac.size else 0.0,
        "removed_energy_fraction_std": float(frac.std()) if frac.size else 0.0,
        "realizations": cfg.realizations,
    }

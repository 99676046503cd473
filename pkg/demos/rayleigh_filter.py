"""Filtered Rayleigh channels: how much energy is evanescent?

Generates white CN(0,1) channel batches, removes the evanescent
spatial-frequency cells, and compares the removed-energy statistics to
the zone share predicted by the mask (17/64 for an 8x8 array at
half-wavelength spacing).
"""
import numpy as np

from kroncb import (
    CodebookConfig,
    build_mask,
    filter_evanescent,
    generate_rayleigh,
    removed_energy_fraction,
)
from kroncb.rayleigh import RayleighConfig

for alpha in (0.5, 0.4, 0.25):
    rcfg = RayleighConfig(8, 8, alpha, alpha, seed=17, realizations=5000)
    channels = generate_rayleigh(rcfg)
    filtered = filter_evanescent(channels, 8, 8, alpha, alpha)
    frac = removed_energy_fraction(channels, filtered)
    zone = build_mask(CodebookConfig(8, 8, 1, 1), alpha, alpha).flags.mean()
    print(f"alpha = {alpha}: removed energy {frac.mean():.4f} "
          f"+/- {frac.std():.4f} (zone share {zone:.4f})")

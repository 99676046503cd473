"""Evanescent-zone masks across spacings and sub-carriers.

Draws the shifted (l', m') layout of CB(8,8,4,4) as an ASCII map for a
few antenna spacings, then sweeps a 10 GHz carrier with wideband
offsets to show the zone shrinking at higher sub-carriers.
"""
import numpy as np

from kroncb import CodebookConfig, build_mask, wideband_masks

cfg = CodebookConfig(8, 8, 4, 4)

for alpha in (0.5, 0.4, 0.25):
    mask = build_mask(cfg, alpha, alpha)
    stats = mask.stats()
    print(f"alpha = {alpha}: {stats.evanescent}/{stats.total} evanescent "
          f"({100 * stats.redundancy:.2f}% redundancy)")
    layout = mask.shifted_layout()
    for row in layout:
        print("  " + "".join("#" if f else "." for f in row))
    print()

print("wideband sweep at fc = 10 GHz, half-wavelength spacing at fc:")
fc = 10e9
d = 299792458.0 / (2 * fc)
for f, _, stats in wideband_masks(cfg, d, d, fc, [0.0, 1e7, 1e8, 5e8, 1e9]):
    print(f"  f = {f / 1e9:6.3f} GHz: {stats.evanescent:4d} evanescent "
          f"({100 * stats.redundancy:5.2f}%)")

"""Near-field channel energy stays inside the regular zone.

Focuses a large array on points through the Fresnel region and projects
the spherical-wavefront channel onto the critical (o = 1) codebook. The
energy landing on regular or boundary-adjacent cells stays near 1: the
spherical phase never carries spatial frequencies beyond k.
"""
import numpy as np

from kroncb import (
    ArrayGeometry,
    CodebookConfig,
    build_mask,
    near_field_channel,
    project_channel,
    regular_or_boundary,
)
from kroncb.geometry import fresnel_range

n = 64
geom = ArrayGeometry(n, n, 0.5, 0.5, 1.0)
cfg = CodebookConfig(n, n, 1, 1)
inner, outer = fresnel_range(geom.aperture, geom.wavelength)
print(f"{n}x{n} half-wavelength array: Fresnel range "
      f"[{inner:.1f}, {outer:.1f}) wavelengths")

mask = build_mask(cfg, 0.5, 0.5)
confined = regular_or_boundary(mask)
for r in np.geomspace(inner, outer, 5):
    for theta_deg in (0, 30, 60):
        h = near_field_channel(geom, r, np.radians(theta_deg), np.radians(45))
        corr = project_channel(cfg, h)
        frac = corr[confined].sum() / corr.sum()
        print(f"  r = {r:7.1f} lambda, theta = {theta_deg:2d} deg: "
              f"regular+boundary energy = {frac:.5f}")

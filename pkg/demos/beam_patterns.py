"""Beam patterns of regular, grazing and evanescent codewords.

Synthesizes hemisphere power maps for v_{4,10} (a well-behaved regular
beam), v_{16,0} (the outermost codeword that always splits into a
grating-lobe pair), a diagonal precoding with the same transverse
wavenumber, and the evanescent v_{14,16}.
"""
import numpy as np

from kroncb import (
    ArrayGeometry,
    CodebookConfig,
    analyze_lobes,
    beam_direction,
    generate_codeword,
    steering_from_wavenumbers,
    synthesize_pattern,
)

cfg = CodebookConfig(8, 8, 4, 4)
geom = ArrayGeometry(8, 8, 0.5, 0.5, 1.0)


def show(name, weights):
    grid = synthesize_pattern(geom, weights, theta_step_deg=1, phi_step_deg=1)
    rpt = analyze_lobes(grid)
    print(f"{name}: peak ({rpt.peak_theta_deg:.1f}, {rpt.peak_phi_deg:.1f}) deg, "
          f"gain {rpt.peak_gain_db:.1f} dB, directional={rpt.directional}")
    for lb in rpt.lobes[:4]:
        print(f"    lobe ({lb.theta_deg:6.1f}, {lb.phi_deg:6.1f}) deg  "
              f"{lb.power_dbw:7.2f} dBW  prominence {lb.prominence_db:.1f} dB")


theta, phi = beam_direction(cfg, 4, 10, 0.5, 0.5)
print(f"analytic direction of v_4,10: "
      f"({np.degrees(theta):.4f}, {np.degrees(phi):.4f}) deg")
show("v_4,10 ", generate_codeword(cfg, 4, 10))
show("v_16,0 ", generate_codeword(cfg, 16, 0))
show("diag k ", steering_from_wavenumbers(geom, geom.k / np.sqrt(2),
                                          geom.k / np.sqrt(2)))
show("v_14,16", generate_codeword(cfg, 14, 16))

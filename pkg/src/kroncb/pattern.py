"""Far-field beam-pattern synthesis and lobe analysis.

Received power on a hemisphere of radius R centered on the array:

    P(r') = S * | sum_i sqrt(P_i * F_n) / |r_i - r'| * exp(j*k*|r_i - r'|) * w_i |^2

with S = lambda^2/4, isotropic element pattern F_n = 1/(2*pi) and total
transmit power normalized to one (P_i = 1/N). The outgoing-wave phase
sign follows the exp(+j*k.r) plane-wave convention, so a codeword with
positive phase gradients beams into the first azimuth quadrant.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .codebook import CodebookConfig
from .classifier import codeword_wavenumbers
from .geometry import ArrayGeometry, fresnel_range, steering_from_wavenumbers

_OBS_CHUNK = 20000


@dataclass(frozen=True)
class PatternGrid:
    """Received-power samples (watts) over the front hemisphere.

    power[i, j] corresponds to theta_deg[i], phi_deg[j].
    """

    theta_deg: np.ndarray
    phi_deg: np.ndarray
    power: np.ndarray
    radius: float

    def power_dbw(self) -> np.ndarray:
        floor = self.power.max() * 1e-30 if self.power.max() > 0 else 1e-300
        return 10 * np.log10(np.maximum(self.power, floor))


@dataclass(frozen=True)
class Lobe:
    theta_deg: float
    phi_deg: float
    power_dbw: float
    prominence_db: float


@dataclass(frozen=True)
class LobeReport:
    """Peak and lobe inventory of one beam pattern.

    peak_gain_db is the peak power over the solid-angle-weighted
    hemisphere mean (a directivity-style beamforming gain), so it stays
    comparable across arrays radiating different total power.
    """

    peak_theta_deg: float
    peak_phi_deg: float
    peak_power_dbw: float
    peak_gain_db: float
    directional: bool
    lobes: list[Lobe] = field(default_factory=list)


def default_radius(geometry: ArrayGeometry) -> float:
    """10x the outer Fresnel bound (floored at one wavelength for tiny arrays)."""
    _, outer = fresnel_range(geometry.aperture, geometry.wavelength)
    return 10 * max(outer, geometry.wavelength)


def hemisphere_grid(theta_step_deg: float = 0.5, phi_step_deg: float = 0.5):
    """Sample angles: theta in [0, 90] inclusive, phi in [0, 360)."""
    theta = np.arange(0.0, 90.0 + 1e-9, theta_step_deg)
    phi = np.arange(0.0, 360.0, phi_step_deg)
    return theta, phi


def _observation_points(geometry: ArrayGeometry, radius: float,
                        theta_deg: np.ndarray, phi_deg: np.ndarray) -> np.ndarray:
    th = np.radians(theta_deg)[:, None]
    ph = np.radians(phi_deg)[None, :]
    sin_t = np.sin(th)
    pts = np.empty((theta_deg.size, phi_deg.size, 3))
    pts[..., 0] = radius * sin_t * np.cos(ph)
    pts[..., 1] = radius * sin_t * np.sin(ph)
    pts[..., 2] = radius * np.cos(th) * np.ones_like(ph)
    return pts.reshape(-1, 3) + geometry.center()


def _check_radius(geometry: ArrayGeometry, radius: float, allow_near_field: bool):
    _, outer = fresnel_range(geometry.aperture, geometry.wavelength)
    if radius <= 0:
        raise ValueError("radius must be positive")
    if radius < outer and not allow_near_field:
        raise ValueError(
            f"radius {radius:.4g} m is inside the radiative near field "
            f"(outer Fresnel bound {outer:.4g} m); pass allow_near_field=True to override")


def _accumulate(geometry: ArrayGeometry, weights: np.ndarray, radius: float,
                theta_deg: np.ndarray, phi_deg: np.ndarray):
    """Field sums A @ w per observation point, chunked to bound memory.

    weights may be (N,) or (N, K); returns (P,) or (P, K) power in watts.
    """
    pos = geometry.element_positions()
    obs = _observation_points(geometry, radius, theta_deg, phi_deg)
    amp = np.sqrt(1.0 / (geometry.size * 2 * np.pi))  # sqrt(P_i * F_n)
    s_eff = geometry.wavelength ** 2 / 4
    k = geometry.k
    w = np.asarray(weights)
    out_shape = (obs.shape[0],) if w.ndim == 1 else (obs.shape[0], w.shape[1])
    out = np.empty(out_shape)
    for start in range(0, obs.shape[0], _OBS_CHUNK):
        chunk = obs[start:start + _OBS_CHUNK]
        dist = np.linalg.norm(chunk[:, None, :] - pos[None, :, :], axis=2)
        a = amp * np.exp(1j * k * dist) / dist
        out[start:start + _OBS_CHUNK] = s_eff * np.abs(a @ w) ** 2
    return out


def synthesize_pattern(geometry: ArrayGeometry, weights: np.ndarray,
                       radius: float | None = None,
                       theta_step_deg: float = 0.5, phi_step_deg: float = 0.5,
                       allow_near_field: bool = False) -> PatternGrid:
    """Hemisphere received-power map for one precoding vector."""
    weights = np.asarray(weights)
    if weights.shape != (geometry.size,):
        raise ValueError(f"expected {geometry.size} weights, got shape {weights.shape}")
    if radius is None:
        radius = default_radius(geometry)
    _check_radius(geometry, radius, allow_near_field)
    theta_deg, phi_deg = hemisphere_grid(theta_step_deg, phi_step_deg)
    power = _accumulate(geometry, weights, radius, theta_deg, phi_deg)
    return PatternGrid(theta_deg=theta_deg, phi_deg=phi_deg,
                       power=power.reshape(theta_deg.size, phi_deg.size), radius=radius)


def peak_powers(geometry: ArrayGeometry, weight_matrix: np.ndarray,
                radius: float | None = None,
                theta_step_deg: float = 1.0, phi_step_deg: float = 1.0,
                allow_near_field: bool = False) -> np.ndarray:
    """Hemisphere-maximum power for each column of weight_matrix (N, K).

    Streams over the observation grid so large codebooks never
    materialize a full (points x codewords) power map.
    """
    weight_matrix = np.asarray(weight_matrix)
    if weight_matrix.shape[0] != geometry.size:
        raise ValueError("weight matrix rows must equal the element count")
    if radius is None:
        radius = default_radius(geometry)
    _check_radius(geometry, radius, allow_near_field)
    theta_deg, phi_deg = hemisphere_grid(theta_step_deg, phi_step_deg)
    pos = geometry.element_positions()
    obs = _observation_points(geometry, radius, theta_deg, phi_deg)
    amp = np.sqrt(1.0 / (geometry.size * 2 * np.pi))
    s_eff = geometry.wavelength ** 2 / 4
    peaks = np.zeros(weight_matrix.shape[1])
    for start in range(0, obs.shape[0], _OBS_CHUNK):
        chunk = obs[start:start + _OBS_CHUNK]
        dist = np.linalg.norm(chunk[:, None, :] - pos[None, :, :], axis=2)
        a = amp * np.exp(1j * geometry.k * dist) / dist
        power = s_eff * np.abs(a @ weight_matrix) ** 2
        np.maximum(peaks, power.max(axis=0), out=peaks)
    return peaks


def _local_maxima(power: np.ndarray) -> np.ndarray:
    """Boolean grid of 8-neighborhood maxima; phi axis wraps, theta clamps."""
    filt = ndimage.maximum_filter(power, size=3, mode=("nearest", "wrap"))
    return power >= filt


def _component_has_higher(power: np.ndarray, cell: tuple[int, int], level: float,
                          ref: float) -> bool:
    """Does the connected region {power >= level} containing cell reach above ref?

    The grid is doubled along phi so regions crossing the 0/360 seam
    stay connected.
    """
    doubled = np.concatenate([power, power], axis=1)
    mask = doubled >= level
    labels, _ = ndimage.label(mask, structure=np.ones((3, 3), int))
    lab = labels[cell[0], cell[1]]
    return bool(doubled[labels == lab].max() > ref)


def _prominence_db(power_db: np.ndarray, cell: tuple[int, int]) -> float:
    """Topographic prominence of a local maximum, in dB, with phi wrap."""
    pc = power_db[cell]
    lo = float(power_db.min())
    if not _component_has_higher(power_db, cell, lo, pc):
        return pc - lo  # global peak: prominence down to the pattern floor
    hi = pc
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        if _component_has_higher(power_db, cell, mid, pc):
            lo = mid
        else:
            hi = mid
    return pc - lo


def _quadratic_offset(y_minus: float, y0: float, y_plus: float) -> float:
    denom = y_minus - 2 * y0 + y_plus
    if denom >= 0:
        return 0.0
    return float(np.clip(0.5 * (y_minus - y_plus) / denom, -0.5, 0.5))


def _refine_peak(grid: PatternGrid, i: int, j: int) -> tuple[float, float]:
    """Sub-grid peak direction by quadratic fit along theta and phi (dB domain)."""
    db = grid.power_dbw()
    nt, nph = db.shape
    theta = grid.theta_deg[i]
    if 0 < i < nt - 1:
        off = _quadratic_offset(db[i - 1, j], db[i, j], db[i + 1, j])
        theta += off * (grid.theta_deg[1] - grid.theta_deg[0])
    jm, jp = (j - 1) % nph, (j + 1) % nph
    off = _quadratic_offset(db[i, jm], db[i, j], db[i, jp])
    phi_step = grid.phi_deg[1] - grid.phi_deg[0] if nph > 1 else 0.0
    phi = (grid.phi_deg[j] + off * phi_step) % 360.0
    return float(theta), float(phi)


def analyze_lobes(grid: PatternGrid, prominence_db: float = 3.0,
                  directional_margin_db: float = 10.0,
                  max_directional_theta_deg: float = 85.0,
                  floor_db: float = 30.0, max_candidates: int = 60) -> LobeReport:
    """Locate pattern lobes and judge whether the pattern is directional.

    Lobes are local maxima within floor_db of the global peak whose
    topographic prominence is at least prominence_db. `directional`
    requires the peak to clear the solid-angle-weighted hemisphere mean
    power by directional_margin_db and to sit below
    max_directional_theta_deg in elevation.
    """
    db = grid.power_dbw()
    peak_idx = np.unravel_index(np.argmax(grid.power), grid.power.shape)
    peak_db = float(db[peak_idx])
    peak_theta, peak_phi = _refine_peak(grid, *peak_idx)

    weights = np.sin(np.radians(grid.theta_deg))[:, None] * np.ones_like(grid.power)
    mean_power = float(np.average(grid.power, weights=weights)) if weights.sum() > 0 \
        else float(grid.power.mean())
    mean_db = 10 * np.log10(mean_power) if mean_power > 0 else -np.inf
    peak_gain_db = peak_db - mean_db
    directional = (peak_gain_db >= directional_margin_db
                   and peak_theta < max_directional_theta_deg)

    cand = np.argwhere(_local_maxima(grid.power) & (db >= peak_db - floor_db))
    if cand.shape[0] > max_candidates:
        order = np.argsort(db[cand[:, 0], cand[:, 1]])[::-1]
        cand = cand[order[:max_candidates]]
    lobes = []
    for i, j in cand:
        prom = _prominence_db(db, (int(i), int(j)))
        if prom >= prominence_db:
            th, ph = _refine_peak(grid, int(i), int(j))
            lobes.append(Lobe(theta_deg=th, phi_deg=ph,
                              power_dbw=float(db[i, j]), prominence_db=prom))
    lobes.sort(key=lambda lb: lb.power_dbw, reverse=True)
    return LobeReport(peak_theta_deg=peak_theta, peak_phi_deg=peak_phi,
                      peak_power_dbw=peak_db, peak_gain_db=float(peak_gain_db),
                      directional=directional, lobes=lobes)


@dataclass(frozen=True)
class InterpolationRun:
    alpha: float
    pattern: PatternGrid
    report: LobeReport


def interpolation_experiment(cfg: CodebookConfig, l: int, m: int, dense_spacings,
                             reference_alpha: float = 0.5, wavelength: float = 1.0,
                             theta_step_deg: float = 0.5, phi_step_deg: float = 0.5,
                             radius: float | None = None) -> list[InterpolationRun]:
    """Re-synthesize one codeword's physical phase gradients on denser grids.

    The codeword's wavenumbers (kx, ky) are fixed at the reference
    spacing (alpha = reference_alpha), then applied by phase-gradient
    interpolation on arrays with each spacing in dense_spacings. The
    physical aperture of the reference array is preserved: a denser
    spacing resamples the same continuous phase profile with more
    antennas, so once the spatial Nyquist criterion is met the
    reconstructed field (and hence the peak gain) stops changing. A
    common far-field radius keeps runs comparable.
    """
    k = 2 * np.pi / wavelength
    kx, ky, _ = codeword_wavenumbers(cfg, l, m, reference_alpha, reference_alpha, k)
    # keep the sampled aperture n*d fixed; the paper's spacings 0.5/0.4/0.25
    # then tile it exactly with 8/10/16 elements per side
    len1 = cfg.n1 * reference_alpha
    len2 = cfg.n2 * reference_alpha
    spacings = list(dense_spacings)
    if radius is None:
        widest = max(spacings + [reference_alpha])
        geom = ArrayGeometry(cfg.n1, cfg.n2, widest * wavelength, widest * wavelength,
                             wavelength)
        radius = default_radius(geom)
    runs = []
    for alpha in spacings:
        n1 = max(1, int(round(len1 / alpha)))
        n2 = max(1, int(round(len2 / alpha)))
        geom = ArrayGeometry(n1, n2, alpha * wavelength, alpha * wavelength,
                             wavelength)
        w = steering_from_wavenumbers(geom, kx, ky)
        grid = synthesize_pattern(geom, w, radius=radius,
                                  theta_step_deg=theta_step_deg,
                                  phi_step_deg=phi_step_deg)
        runs.append(InterpolationRun(alpha=alpha, pattern=grid,
                                     report=analyze_lobes(grid)))
    return runs

"""Kronecker-product DFT codebook analysis for uniform planar arrays."""

from .codebook import (
    CodebookConfig,
    check_index,
    generate_codeword,
    nominal_phase_gradients,
    shift_index,
    unshift_index,
)
from .geometry import (
    ArrayGeometry,
    direction_wavenumbers,
    dispersion_kz,
    fresnel_range,
    los_channel,
    near_field_channel,
    near_field_gradients,
    steering_from_wavenumbers,
)
from .classifier import (
    EvanescentMask,
    ZoneStats,
    beam_direction,
    build_mask,
    codeword_wavenumbers,
    is_evanescent,
    nyquist_limits,
    project_channel,
    redundancy_stats,
    regular_or_boundary,
    supported_k,
    wideband_masks,
)
from .pattern import (
    InterpolationRun,
    Lobe,
    LobeReport,
    PatternGrid,
    analyze_lobes,
    default_radius,
    interpolation_experiment,
    peak_powers,
    synthesize_pattern,
)
from .rayleigh import (
    RayleighConfig,
    filter_evanescent,
    filter_summary,
    generate_rayleigh,
    removed_energy_fraction,
)
from .linksim import (
    SelectionStats,
    SimConfig,
    run_drops,
    selection_heatmap,
    zone_boundary_points,
)

__version__ = "0.1.0"

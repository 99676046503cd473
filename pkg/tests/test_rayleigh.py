"""Rayleigh generation and evanescent-filter projection tests."""
import numpy as np
import pytest

from kroncb import (
    CodebookConfig,
    build_mask,
    filter_evanescent,
    generate_codeword,
    generate_rayleigh,
    removed_energy_fraction,
)
from kroncb.rayleigh import RayleighConfig, filter_summary


def test_config_validation():
    with pytest.raises(ValueError):
        RayleighConfig(0, 8, 0.5, 0.5, seed=1, realizations=10)
    with pytest.raises(ValueError):
        RayleighConfig(8, 8, 0.5, 0.5, seed=1, realizations=-1)


def test_generation_deterministic_and_batch_stable():
    cfg5 = RayleighConfig(4, 4, 0.5, 0.5, seed=7, realizations=5)
    cfg3 = RayleighConfig(4, 4, 0.5, 0.5, seed=7, realizations=3)
    a = generate_rayleigh(cfg5)
    b = generate_rayleigh(cfg3)
    np.testing.assert_array_equal(a[:3], b)   # substreams per realization
    np.testing.assert_array_equal(a, generate_rayleigh(cfg5))


def test_generation_is_unit_variance():
    cfg = RayleighConfig(8, 8, 0.5, 0.5, seed=3, realizations=2000)
    g = generate_rayleigh(cfg)
    assert np.abs(g.mean()) < 0.01
    assert np.mean(np.abs(g) ** 2) == pytest.approx(1.0, abs=0.02)


def test_filter_idempotent_and_orthogonal(rng):
    h = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    f1 = filter_evanescent(h, 8, 8, 0.5, 0.5)
    f2 = filter_evanescent(f1, 8, 8, 0.5, 0.5)
    np.testing.assert_allclose(f1, f2, atol=1e-12)
    # orthogonal projection: the removed component is orthogonal to the kept one
    assert abs(np.vdot(h - f1, f1)) < 1e-9 * np.linalg.norm(h) ** 2


def test_filter_passes_regular_codewords_exactly():
    cfg = CodebookConfig(8, 8, 1, 1)
    mask = build_mask(cfg, 0.5, 0.5)
    v_reg = generate_codeword(cfg, 1, 2)
    assert not mask.flags[1, 2]
    np.testing.assert_allclose(filter_evanescent(v_reg, 8, 8, 0.5, 0.5), v_reg,
                               atol=1e-10)
    # ... and annihilates evanescent ones
    l, m = np.argwhere(mask.flags)[0]
    v_ev = generate_codeword(cfg, int(l), int(m))
    assert np.linalg.norm(filter_evanescent(v_ev, 8, 8, 0.5, 0.5)) < 1e-10


def test_removed_energy_matches_spectral_oracle(rng):
    """Removed fraction equals the evanescent-cell share of the unitary spectrum."""
    mask = build_mask(CodebookConfig(8, 8, 1, 1), 0.5, 0.5)
    h = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    spec = np.fft.fft2(h.reshape(8, 8), norm="ortho")
    expect = np.sum(np.abs(spec[mask.flags]) ** 2) / np.sum(np.abs(spec) ** 2)
    f = filter_evanescent(h, 8, 8, 0.5, 0.5)
    assert removed_energy_fraction(h, f) == pytest.approx(expect, rel=1e-10)


def test_filter_batch_and_keep_override(rng):
    batch = rng.standard_normal((5, 64)) + 1j * rng.standard_normal((5, 64))
    out = filter_evanescent(batch, 8, 8, 0.5, 0.5)
    assert out.shape == (5, 64)
    keep_all = np.ones((8, 8), bool)
    np.testing.assert_allclose(filter_evanescent(batch, 8, 8, 0.5, 0.5, keep=keep_all),
                               batch, atol=1e-12)
    with pytest.raises(ValueError):
        filter_evanescent(batch, 8, 8, 0.5, 0.5, keep=np.ones((4, 4), bool))
    with pytest.raises(ValueError):
        filter_evanescent(batch[:, :10], 8, 8, 0.5, 0.5)


def test_mean_removed_fraction_near_zone_share():
    """White channels lose on average the O=1 evanescent zone share (17/64)."""
    cfg = RayleighConfig(8, 8, 0.5, 0.5, seed=11, realizations=2000)
    summary = filter_summary(cfg)
    zone = build_mask(CodebookConfig(8, 8, 1, 1), 0.5, 0.5).flags.mean()
    assert zone == 17 / 64
    assert summary["removed_energy_fraction_mean"] == pytest.approx(zone, rel=0.02)
    assert summary["realizations"] == 2000

"""Codeword construction, indexing and DFT-shift tests."""
import numpy as np
import pytest

from kroncb import (
    CodebookConfig,
    check_index,
    generate_codeword,
    nominal_phase_gradients,
    shift_index,
    unshift_index,
)


def test_config_validation():
    with pytest.raises(ValueError):
        CodebookConfig(0, 8, 4, 4)
    with pytest.raises(ValueError):
        CodebookConfig(8, 8, 4, -1)
    with pytest.raises(ValueError):
        CodebookConfig(8, 8, 1.5, 1)


def test_config_sizes(cfg884):
    assert cfg884.size1 == 32
    assert cfg884.size2 == 32
    assert cfg884.cardinality == 1024


def test_check_index_bounds(cfg884):
    check_index(cfg884, 0, 0)
    check_index(cfg884, 31, 31)
    for bad in [(-1, 0), (0, -1), (32, 0), (0, 32)]:
        with pytest.raises(IndexError):
            check_index(cfg884, *bad)


def test_codeword_unit_modulus(cfg884):
    v = generate_codeword(cfg884, 7, 19)
    assert v.shape == (64,)
    np.testing.assert_allclose(np.abs(v), 1.0, atol=1e-12)


def test_codeword_phase_oracle(cfg884):
    """Entry (i1, i2) carries phase 2*pi*(i1*l/(N1O1) + i2*m/(N2O2))."""
    l, m = 5, 27
    v = generate_codeword(cfg884, l, m)
    for i1 in range(cfg884.n1):
        for i2 in range(cfg884.n2):
            expect = np.exp(2j * np.pi * (i1 * l / 32 + i2 * m / 32))
            assert v[i1 * cfg884.n2 + i2] == pytest.approx(expect, abs=1e-12)


def test_codeword_kron_structure(cfg884):
    """x-major ordering: the x steering vector is the first Kronecker factor."""
    v = generate_codeword(cfg884, 3, 11)
    vx = np.exp(2j * np.pi * 3 * np.arange(8) / 32)
    vy = np.exp(2j * np.pi * 11 * np.arange(8) / 32)
    np.testing.assert_allclose(v.reshape(8, 8), np.outer(vx, vy), atol=1e-12)


def test_two_by_two_codeword_signs():
    """CB(2,2,1,1) codeword (1,1) is the +/- checkerboard [1,-1,-1,1]."""
    cfg = CodebookConfig(2, 2, 1, 1)
    v = generate_codeword(cfg, 1, 1)
    np.testing.assert_allclose(v, [1, -1, -1, 1], atol=1e-12)


def test_critical_codebook_orthogonality():
    """o1 = o2 = 1 codewords form an orthogonal basis."""
    cfg = CodebookConfig(4, 4, 1, 1)
    basis = np.stack([generate_codeword(cfg, l, m)
                      for l in range(4) for m in range(4)])
    gram = basis.conj() @ basis.T
    np.testing.assert_allclose(gram, 16 * np.eye(16), atol=1e-9)


def test_shift_index_range_and_values(cfg884):
    assert shift_index(cfg884, 0, 0) == (0, 0)
    assert shift_index(cfg884, 16, 16) == (16, 16)   # half grid stays positive
    assert shift_index(cfg884, 17, 31) == (-15, -1)
    assert shift_index(cfg884, 4, 10) == (4, 10)
    for l in range(32):
        ls, _ = shift_index(cfg884, l, 0)
        assert -16 < ls <= 16


def test_shift_unshift_roundtrip(cfg884):
    for l in range(32):
        for m in range(32):
            assert unshift_index(cfg884, *shift_index(cfg884, l, m)) == (l, m)


def test_unshift_rejects_out_of_range(cfg884):
    with pytest.raises(IndexError):
        unshift_index(cfg884, -16, 0)
    with pytest.raises(IndexError):
        unshift_index(cfg884, 0, 17)


def test_nominal_phase_gradients(cfg884):
    gx, gy = nominal_phase_gradients(cfg884, 4, 10)
    assert gx == pytest.approx(2 * np.pi * 4 / 32)
    assert gy == pytest.approx(2 * np.pi * 10 / 32)
    # the gradient is exactly the per-element phase step of the codeword
    v = generate_codeword(cfg884, 4, 10)
    step_x = np.angle(v[8] / v[0])
    assert step_x == pytest.approx(gx)

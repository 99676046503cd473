"""Shared fixtures for the kroncb test suite."""
import numpy as np
import pytest

from kroncb import ArrayGeometry, CodebookConfig


@pytest.fixture(scope="session")
def cfg884():
    """The workhorse oversampled codebook CB(8,8,4,4)."""
    return CodebookConfig(8, 8, 4, 4)


@pytest.fixture(scope="session")
def geom_half():
    """8x8 half-wavelength UPA with unit wavelength."""
    return ArrayGeometry(8, 8, 0.5, 0.5, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)

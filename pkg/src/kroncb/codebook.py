"""Kronecker-product DFT codewords for uniform planar arrays.

A codebook is parameterized by the antenna counts (n1, n2) and the
oversampling factors (o1, o2). Codeword (l, m) is the Kronecker product
of two 1-D DFT steering vectors with nominal phase gradients
2*pi*l/(n1*o1) and 2*pi*m/(n2*o2). Entries are kept unit-modulus; any
normalization is left to the consumer.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CodebookConfig:
    """Size parameters of a Kronecker-product DFT codebook.

    n1, n2 : antennas in the x- and y-direction
    o1, o2 : oversampling factors in the x- and y-direction
    """

    n1: int
    n2: int
    o1: int = 1
    o2: int = 1

    def __post_init__(self):
        for name in ("n1", "n2", "o1", "o2"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")

    @property
    def size1(self) -> int:
        """Number of codeword indices in the x-direction (n1*o1)."""
        return self.n1 * self.o1

    @property
    def size2(self) -> int:
        """Number of codeword indices in the y-direction (n2*o2)."""
        return self.n2 * self.o2

    @property
    def cardinality(self) -> int:
        return self.size1 * self.size2


def check_index(cfg: CodebookConfig, l: int, m: int) -> None:
    """Raise IndexError unless (l, m) addresses a codeword of cfg."""
    if not (0 <= l < cfg.size1):
        raise IndexError(f"l={l} out of range [0, {cfg.size1})")
    if not (0 <= m < cfg.size2):
        raise IndexError(f"m={m} out of range [0, {cfg.size2})")


def generate_codeword(cfg: CodebookConfig, l: int, m: int) -> np.ndarray:
    """Return the (l, m) codeword as a length n1*n2 complex vector.

    Ordering is x-major: entry for antenna (i1, i2) sits at index
    i1*n2 + i2, i.e. the x-direction steering vector is the first
    Kronecker factor. Every entry has unit modulus.
    """
    check_index(cfg, l, m)
    vx = np.exp(2j * np.pi * l * np.arange(cfg.n1) / cfg.size1)
    vy = np.exp(2j * np.pi * m * np.arange(cfg.n2) / cfg.size2)
    return np.kron(vx, vy)


def shift_index(cfg: CodebookConfig, l: int, m: int) -> tuple[int, int]:
    """DFT-shift (l, m) so that zero spatial frequency maps to (0, 0).

    The shifted index l' lies in (-n1*o1/2, n1*o1/2] and analogously
    for m'. Indices at or below the half grid keep their value; the
    rest wrap to negative frequencies.
    """
    check_index(cfg, l, m)
    ls = l if 2 * l <= cfg.size1 else l - cfg.size1
    ms = m if 2 * m <= cfg.size2 else m - cfg.size2
    return ls, ms


def unshift_index(cfg: CodebookConfig, l_shift: int, m_shift: int) -> tuple[int, int]:
    """Inverse of shift_index on the valid shifted range."""
    if not (-cfg.size1 < 2 * l_shift <= cfg.size1):
        raise IndexError(f"l_shift={l_shift} outside (-{cfg.size1}/2, {cfg.size1}/2]")
    if not (-cfg.size2 < 2 * m_shift <= cfg.size2):
        raise IndexError(f"m_shift={m_shift} outside (-{cfg.size2}/2, {cfg.size2}/2]")
    return l_shift % cfg.size1, m_shift % cfg.size2


def nominal_phase_gradients(cfg: CodebookConfig, l: int, m: int) -> tuple[float, float]:
    """Per-element phase steps (radians) of codeword (l, m) in x and y."""
    check_index(cfg, l, m)
    return 2 * np.pi * l / cfg.size1, 2 * np.pi * m / cfg.size2

"""Image quality metrics and scanline edge profiles."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .image import Image

__all__ = ["QualityReport", "EdgeProfile", "mse", "psnr", "quality", "extract_profile", "profile_rmse"]


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr_db: float


@dataclass(frozen=True)
class EdgeProfile:
    """Amplitudes along one image row, indexed by column."""

    positions: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self):
        if len(self.positions) != len(self.amplitudes):
            raise ValueError("positions and amplitudes differ in length")
        if np.any(np.diff(self.positions) <= 0):
            raise ValueError("positions must be strictly increasing")

    def __len__(self):
        return len(self.amplitudes)


def _check_same_shape(a: Image, b: Image) -> None:
    if a.shape != b.shape:
        raise ValueError(f"image dimensions differ: {a.shape} vs {b.shape}")


def mse(a: Image, b: Image) -> float:
    _check_same_shape(a, b)
    diff = a.data - b.data
    return float(np.mean(diff * diff))


def psnr(a: Image, b: Image) -> float:
    """Peak signal-to-noise ratio in dB with peak amplitude 1.0.

    Returns ``math.inf`` for identical images.
    """
    err = mse(a, b)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / err)


def quality(reference: Image, test: Image) -> QualityReport:
    err = mse(reference, test)
    return QualityReport(err, math.inf if err == 0.0 else 10.0 * math.log10(1.0 / err))


def extract_profile(img: Image, row: int) -> EdgeProfile:
    if not 0 <= row < img.height:
        raise IndexError(f"row {row} outside image of height {img.height}")
    return EdgeProfile(np.arange(img.width), np.array(img.data[row], dtype=np.float64))


def profile_rmse(clean: EdgeProfile, test: EdgeProfile) -> float:
    """Root-mean-square amplitude difference between two profiles."""
    if len(clean) != len(test):
        raise ValueError(f"profile lengths differ: {len(clean)} vs {len(test)}")
    diff = clean.amplitudes - test.amplitudes
    return float(np.sqrt(np.mean(diff * diff)))

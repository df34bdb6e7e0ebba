"""Seeded speckle noise and synthetic test images."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .image import Image

__all__ = [
    "NoiseDistribution",
    "NoiseSpec",
    "add_speckle",
    "speckle_field",
    "generate_checker",
    "generate_step_edge",
]


class NoiseDistribution(str, Enum):
    UNIFORM = "uniform"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class NoiseSpec:
    """Zero-mean multiplicative noise of the given variance.

    The generator is numpy's PCG64 seeded with ``seed``; draws are taken in
    row-major pixel order.
    """

    variance: float
    seed: int = 0
    distribution: NoiseDistribution = NoiseDistribution.UNIFORM

    def __post_init__(self):
        if not self.variance > 0:
            raise ValueError(f"noise variance must be > 0, got {self.variance}")
        object.__setattr__(self, "distribution", NoiseDistribution(self.distribution))


def speckle_field(shape: tuple[int, int], spec: NoiseSpec) -> np.ndarray:
    """Draw the per-pixel multiplicative factor ``n`` (mean 0, variance ``spec.variance``)."""
    rng = np.random.default_rng(spec.seed)
    if spec.distribution is NoiseDistribution.UNIFORM:
        half_width = np.sqrt(3.0 * spec.variance)
        return rng.uniform(-half_width, half_width, size=shape)
    return rng.normal(0.0, np.sqrt(spec.variance), size=shape)


def add_speckle(img: Image, spec: NoiseSpec) -> Image:
    """Corrupt ``img`` with speckle noise: ``clip(I + n * I, 0, 1)``."""
    clean = img.data
    n = speckle_field(clean.shape, spec)
    return Image(np.clip(clean + n * clean, 0.0, 1.0))


def generate_checker(
    width: int = 256,
    height: int = 256,
    square: int = 32,
    low: float = 0.0,
    high: float = 1.0,
) -> Image:
    """Checkerboard with ``high`` on squares whose block-index sum is even."""
    if square < 1:
        raise ValueError(f"square must be >= 1, got {square}")
    if not 0.0 <= low < high <= 1.0:
        raise ValueError(f"need 0 <= low < high <= 1, got low={low}, high={high}")
    rows = np.arange(height)[:, None] // square
    cols = np.arange(width)[None, :] // square
    return Image(np.where((rows + cols) % 2 == 0, high, low))


def generate_step_edge(
    width: int = 64, height: int = 64, low: float = 0.0, high: float = 1.0
) -> Image:
    """Vertical step: columns ``< width // 2`` at ``low``, the rest at ``high``."""
    if width < 2:
        raise ValueError(f"step edge needs width >= 2, got {width}")
    if height < 1:
        raise ValueError(f"height must be >= 1, got {height}")
    row = np.where(np.arange(width) < width // 2, low, high)
    return Image(np.tile(row, (height, 1)))

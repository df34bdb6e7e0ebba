"""Patch similarity, patch sums and the sigma-clipping statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..image import Patch
from .params import Anchor

__all__ = [
    "patch_weight",
    "patch_sum",
    "sd_about",
    "median",
    "WindowStats",
    "ClippedSet",
    "clip_limits",
    "clipped_set",
]


def patch_weight(a: Patch, b: Patch, h: float, normalize: bool = False) -> float:
    """Similarity weight ``exp(-||a - b||^2 / h^2)`` of two equal-size patches.

    The distance is the plain sum of squared differences; with ``normalize``
    it is divided by the number of patch elements first.
    """
    if a.side != b.side:
        raise ValueError(f"patch sides differ: {a.side} vs {b.side}")
    if not h > 0:
        raise ValueError(f"h must be > 0, got {h}")
    diff = a.values - b.values
    d2 = float(np.sum(diff * diff))
    if normalize:
        d2 /= diff.size
    return math.exp(-d2 / (h * h))


def _fold(values) -> float:
    # left-to-right accumulation, the order the kernels use
    acc = 0.0
    for v in np.ravel(values).tolist():
        acc += v
    return acc


def patch_sum(p: Patch) -> float:
    """Sum of the patch amplitudes.

    Elements are added in ascending order, so equal multisets of amplitudes
    give bitwise-equal sums wherever the patch sits.
    """
    return _fold(np.sort(p.values, axis=None))


def sd_about(values: Sequence[float], center: float) -> float:
    """Population standard deviation of ``values`` about ``center`` (divisor N)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("sd_about needs at least one value")
    return math.sqrt(_fold((arr - center) ** 2) / arr.size)


def median(values: Sequence[float]) -> float:
    """Median; for an even count, the mean of the two middle order statistics."""
    arr = np.sort(np.asarray(values, dtype=np.float64))
    if arr.size == 0:
        raise ValueError("median of an empty population")
    mid = arr.size // 2
    if arr.size % 2:
        return float(arr[mid])
    return float((arr[mid - 1] + arr[mid]) / 2.0)


@dataclass(frozen=True)
class WindowStats:
    anchor_value: float
    sd: float
    lower: float
    upper: float
    population: int

    def contains(self, value: float) -> bool:
        """Closed-interval membership test ``lower <= value <= upper``."""
        return self.lower <= value <= self.upper


@dataclass(frozen=True)
class ClippedSet:
    members: tuple[int, ...]
    stats: WindowStats

    def __len__(self):
        return len(self.members)

    def __contains__(self, j):
        return j in self.members


def clip_limits(values: Sequence[float], anchor: Anchor | str) -> WindowStats:
    """Clipping interval ``anchor_value -/+ sd`` for a window population.

    With ``Anchor.MEAN`` the centre is the arithmetic mean and ``sd`` is the
    population standard deviation; with ``Anchor.MEDIAN`` both the centre and
    the spread are taken about the median.
    """
    anchor = Anchor(anchor)
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("clip_limits needs at least one value")
    if anchor is Anchor.MEAN:
        # offset by the first element so a constant population gives its value exactly
        center = float(arr[0] + _fold(arr - arr[0]) / arr.size)
    elif anchor is Anchor.MEDIAN:
        center = median(arr)
    else:
        raise ValueError("clip_limits requires the MEAN or MEDIAN anchor")
    sd = sd_about(arr, center)
    return WindowStats(center, sd, center - sd, center + sd, int(arr.size))


def clipped_set(values: Sequence[float], anchor: Anchor | str) -> ClippedSet:
    """Indices of ``values`` that fall inside the clipping interval."""
    stats = clip_limits(values, anchor)
    members = tuple(j for j, v in enumerate(values) if stats.contains(float(v)))
    return ClippedSet(members, stats)

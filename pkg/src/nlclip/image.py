"""Grayscale image container, mirror padding and patch extraction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "Image",
    "Patch",
    "PixelIndex",
    "pad_mirror",
    "extract_patch",
    "reflect_index",
]


@dataclass(frozen=True, eq=False)
class Image:
    """2-D grayscale raster with amplitudes in [0, 1].

    ``data`` is stored row-major as a read-only ``float64`` array of shape
    ``(height, width)``.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.float64, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image must be a non-empty 2-D array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("image contains non-finite amplitudes")
        if arr.min() < 0.0 or arr.max() > 1.0:
            raise ValueError(
                f"amplitudes must lie in [0, 1], got range [{arr.min()}, {arr.max()}]"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @classmethod
    def constant(cls, width: int, height: int, value: float) -> "Image":
        return cls(np.full((height, width), value, dtype=np.float64))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __getitem__(self, index):
        if isinstance(index, PixelIndex):
            return float(self.data[index.row, index.col])
        return self.data[index]

    def __eq__(self, other):
        if not isinstance(other, Image):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __repr__(self):
        return f"Image(width={self.width}, height={self.height})"


class PixelIndex(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True, eq=False)
class Patch:
    """Square ``side x side`` block of amplitudes centred on a pixel."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.float64, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"patch must be square, got shape {arr.shape}")
        if arr.shape[0] % 2 == 0:
            raise ValueError(f"patch side must be odd, got {arr.shape[0]}")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def side(self) -> int:
        return self.values.shape[0]

    @property
    def center_value(self) -> float:
        c = self.side // 2
        return float(self.values[c, c])


def reflect_index(i: int, n: int) -> int:
    """Map a possibly out-of-range index onto ``[0, n)`` by mirror reflection.

    The edge sample is not repeated, and reflections repeat with period
    ``2 * (n - 1)`` for offsets larger than the axis.
    """
    if n == 1:
        return 0
    period = 2 * (n - 1)
    i %= period
    return period - i if i >= n else i


def pad_mirror(img: Image, margin: int) -> Image:
    """Pad ``img`` by ``margin`` pixels on every side using mirror reflection."""
    if margin < 0:
        raise ValueError(f"margin must be >= 0, got {margin}")
    if margin == 0:
        return img
    return Image(pad_array(img.data, margin))


def pad_array(arr: np.ndarray, margin: int) -> np.ndarray:
    # numpy's "reflect" drops the edge sample and reflects repeatedly for wide margins
    if margin == 0:
        return np.ascontiguousarray(arr, dtype=np.float64)
    return np.pad(np.asarray(arr, dtype=np.float64), margin, mode="reflect")


def extract_patch(img: Image, center: PixelIndex | tuple[int, int], r: int) -> Patch:
    """Return the ``r x r`` patch of ``img`` centred on ``center``.

    ``img`` must already be padded so that the whole block lies inside it.

    Raises
    ------
    ValueError
        If ``r`` is not a positive odd integer.
    IndexError
        If the block crosses the image border (the caller forgot to pad).
    """
    if r < 1 or r % 2 == 0:
        raise ValueError(f"patch side must be a positive odd integer, got {r}")
    row, col = center
    half = r // 2
    top, left = row - half, col - half
    if top < 0 or left < 0 or row + half >= img.height or col + half >= img.width:
        raise IndexError(
            f"{r}x{r} patch at ({row}, {col}) exceeds {img.height}x{img.width} image; "
            "pad the image first"
        )
    return Patch(img.data[top : top + r, left : left + r])

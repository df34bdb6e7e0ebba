"""Optimized denoising kernels.

Two interchangeable implementations of the same per-pixel computation:

* ``numba``: a compiled kernel parallelised over output rows with ``prange``.
* ``numpy``: vectorised over pixels, looping over window offsets, processed
  in row tiles to bound memory.

Set ``NLCLIP_DISABLE_NUMBA=1`` to force the numpy path (the numpy path is also
used when numba cannot be imported).

Both kernels work on the mirror-padded raster and a precomputed map of patch
sums, and form the weighted mean as ``V_i + sum(w * (V_j - V_i)) / sum(w)``
so that constant regions are reproduced exactly.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba
    from numba import njit, prange

    # the bundled TBB is often too old; prefer OpenMP or the built-in workqueue
    if "NUMBA_THREADING_LAYER_PRIORITY" not in os.environ:
        numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

__all__ = [
    "HAVE_NUMBA",
    "ANCHOR_CODES",
    "available_backends",
    "default_backend",
    "patch_sum_map",
    "denoise_padded",
]

ANCHOR_CODES = {"none": 0, "mean": 1, "median": 2}

_TILE_ROWS = 32


def numba_disabled() -> bool:
    return os.environ.get("NLCLIP_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")


def available_backends() -> list[str]:
    return ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]


def default_backend() -> str:
    """Backend used when none is requested; re-read from the environment on every call."""
    if HAVE_NUMBA and not numba_disabled():
        return "numba"
    return "numpy"


def patch_sum_map(padded: np.ndarray, hr: int) -> np.ndarray:
    """Patch sums for every position of ``padded`` that carries a full patch.

    Entry ``[a, b]`` is the sum of the ``(2*hr+1)``-square block centred on
    ``padded[a + hr, b + hr]``. Terms are accumulated in ascending order so
    that equal multisets of amplitudes give bitwise-equal sums.
    """
    side = 2 * hr + 1
    out_h = padded.shape[0] - 2 * hr
    out_w = padded.shape[1] - 2 * hr
    stack = np.empty((side * side, out_h, out_w))
    for k in range(side * side):
        py, px = divmod(k, side)
        stack[k] = padded[py : py + out_h, px : px + out_w]
    stack.sort(axis=0)
    out = np.zeros((out_h, out_w))
    for k in range(side * side):
        out += stack[k]
    return out


# ---------------------------------------------------------------------------
# numpy path


def _clip_mask(psums: np.ndarray, anchor_code: int) -> np.ndarray:
    k = psums.shape[0]
    if anchor_code == 1:
        center = psums[0] + (psums - psums[0]).sum(axis=0) / k
    else:
        center = np.median(psums, axis=0)
    sd = np.sqrt(((psums - center) ** 2).sum(axis=0) / k)
    return (psums >= center - sd) & (psums <= center + sd)


def _denoise_numpy(padded, psum, height, width, hs, hr, h2, anchor_code):
    margin = hs + hr
    side = 2 * hs + 1
    offsets = [(dy, dx) for dy in range(-hs, hs + 1) for dx in range(-hs, hs + 1)]
    out = np.empty((height, width))

    for y0 in range(0, height, _TILE_ROWS):
        y1 = min(y0 + _TILE_ROWS, height)
        th = y1 - y0
        center = padded[y0 + margin : y1 + margin, margin : margin + width]
        # patch neighbourhood of every centre in the tile
        ref = padded[y0 + hs : y1 + hs + 2 * hr, hs : hs + width + 2 * hr]

        weights = np.empty((side * side, th, width))
        diffs = np.empty_like(weights)
        psums = np.empty_like(weights)
        for k, (dy, dx) in enumerate(offsets):
            moved = padded[
                y0 + hs + dy : y1 + hs + dy + 2 * hr, hs + dx : hs + dx + width + 2 * hr
            ]
            sq = (ref - moved) ** 2
            d2 = np.zeros((th, width))
            for py in range(2 * hr + 1):
                for px in range(2 * hr + 1):
                    d2 += sq[py : py + th, px : px + width]
            weights[k] = np.exp(-d2 / h2)
            diffs[k] = (
                padded[y0 + margin + dy : y1 + margin + dy, margin + dx : margin + dx + width]
                - center
            )
            psums[k] = psum[y0 + hs + dy : y1 + hs + dy, hs + dx : hs + dx + width]

        if anchor_code == 0:
            num = (weights * diffs).sum(axis=0)
            den = weights.sum(axis=0)
        else:
            mask = _clip_mask(psums, anchor_code)
            wm = np.where(mask, weights, 0.0)
            num = (wm * diffs).sum(axis=0)
            den = wm.sum(axis=0)
            # empty clipped set, or every clipped weight underflowed
            empty = den == 0.0
            if empty.any():
                num[empty] = (weights * diffs).sum(axis=0)[empty]
                den[empty] = weights.sum(axis=0)[empty]
        out[y0:y1] = np.clip(center + num / den, 0.0, 1.0)
    return out


# ---------------------------------------------------------------------------
# numba path

if HAVE_NUMBA:

    @njit(parallel=True, cache=True)
    def _denoise_numba(padded, psum, height, width, hs, hr, h2, anchor_code):
        margin = hs + hr
        side = 2 * hs + 1
        n = side * side
        out = np.empty((height, width))
        for y in prange(height):
            # per-row buffers indexed [offset, column]; the column loop is innermost
            wbuf = np.empty((n, width))
            dbuf = np.empty((n, width))
            pbuf = np.empty((n, width))
            col = np.empty(n)
            d2 = np.empty(width)
            cy = y + margin
            k = 0
            for dy in range(-hs, hs + 1):
                for dx in range(-hs, hs + 1):
                    d2[:] = 0.0
                    for py in range(-hr, hr + 1):
                        for px in range(-hr, hr + 1):
                            a = padded[cy + py, margin + px : margin + px + width]
                            b = padded[cy + dy + py, margin + dx + px : margin + dx + px + width]
                            for x in range(width):
                                t = a[x] - b[x]
                                d2[x] += t * t
                    for x in range(width):
                        wbuf[k, x] = math.exp(-d2[x] / h2)
                        dbuf[k, x] = padded[cy + dy, margin + dx + x] - padded[cy, margin + x]
                        pbuf[k, x] = psum[cy + dy - hr, margin + dx + x - hr]
                    k += 1

            for x in range(width):
                lower = -np.inf
                upper = np.inf
                if anchor_code != 0:
                    if anchor_code == 1:
                        acc = 0.0
                        for k in range(n):
                            acc += pbuf[k, x] - pbuf[0, x]
                        anchor = pbuf[0, x] + acc / n
                    else:
                        for k in range(n):
                            col[k] = pbuf[k, x]
                        anchor = np.median(col)
                    acc = 0.0
                    for k in range(n):
                        t = pbuf[k, x] - anchor
                        acc += t * t
                    sd = math.sqrt(acc / n)
                    lower = anchor - sd
                    upper = anchor + sd

                num = 0.0
                den = 0.0
                for k in range(n):
                    if pbuf[k, x] >= lower and pbuf[k, x] <= upper:
                        num += wbuf[k, x] * dbuf[k, x]
                        den += wbuf[k, x]
                if den == 0.0:
                    # clipped weights sum to zero: fall back to the unclipped mean
                    num = 0.0
                    for k in range(n):
                        num += wbuf[k, x] * dbuf[k, x]
                        den += wbuf[k, x]
                value = padded[cy, x + margin] + num / den
                out[y, x] = min(max(value, 0.0), 1.0)
        return out


def denoise_padded(
    padded: np.ndarray,
    height: int,
    width: int,
    hs: int,
    hr: int,
    decay: float,
    anchor_code: int,
    backend: str | None = None,
) -> np.ndarray:
    """Run a kernel on an image already mirror-padded by ``hs + hr``.

    ``decay`` is the denominator of the weight exponent, ``h**2`` for the
    raw patch distance.
    """
    backend = backend or default_backend()
    padded = np.ascontiguousarray(padded, dtype=np.float64)
    psum = patch_sum_map(padded, hr)
    args = (padded, psum, height, width, hs, hr, float(decay), anchor_code)
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not installed")
        return _denoise_numba(*args)
    if backend == "numpy":
        return _denoise_numpy(*args)
    raise ValueError(f"unknown backend {backend!r}; expected one of {available_backends()}")

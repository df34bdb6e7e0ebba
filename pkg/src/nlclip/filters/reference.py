"""Naive per-pixel reference implementation of the three filters.

Deliberately literal and slow: it extracts a :class:`Patch` for every
position, computes every weight with :func:`patch_weight`, and builds the
clipped set with :func:`clipped_set`. The optimized kernels are validated
against it.
"""

from __future__ import annotations

import numpy as np

from ..image import Image, extract_patch, pad_mirror
from .params import Anchor, FilterParams
from .stats import clipped_set, patch_sum, patch_weight

__all__ = ["reference_denoise", "reference_box_mean"]


def reference_denoise(img: Image, params: FilterParams, aggregate: str = "center") -> Image:
    """Denoise ``img`` one pixel at a time.

    Parameters
    ----------
    aggregate : {"center", "patch"}
        ``"patch"`` forms the weighted mean of whole patches over the clipped
        set and keeps its centre element; ``"center"`` averages only the
        centre pixels. The two agree by linearity.
    """
    if aggregate not in ("center", "patch"):
        raise ValueError(f"aggregate must be 'center' or 'patch', got {aggregate!r}")
    hs, hr, r = params.search_radius, params.patch_radius, params.r
    margin = hs + hr
    padded = pad_mirror(img, margin)

    # every position of the padded image that carries a full patch
    patches = {
        (y, x): extract_patch(padded, (y, x), r)
        for y in range(hr, padded.height - hr)
        for x in range(hr, padded.width - hr)
    }
    offsets = [(dy, dx) for dy in range(-hs, hs + 1) for dx in range(-hs, hs + 1)]

    out = np.empty(img.shape)
    for row in range(img.height):
        for col in range(img.width):
            ci = (row + margin, col + margin)
            p_i = patches[ci]
            window = [(ci[0] + dy, ci[1] + dx) for dy, dx in offsets]
            weights = [
                patch_weight(p_i, patches[j], params.h, params.normalize_distance)
                for j in window
            ]

            members = list(range(len(window)))
            if params.anchor is not Anchor.NONE:
                sums = [patch_sum(patches[j]) for j in window]
                clipped = clipped_set(sums, params.anchor).members
                # an empty set (or one whose weights all underflow) uses the plain window
                if sum(weights[k] for k in clipped) > 0.0:
                    members = list(clipped)

            den = sum(weights[k] for k in members)
            if aggregate == "center":
                num = sum(weights[k] * padded.data[window[k]] for k in members)
                value = num / den
            else:
                agg = sum(weights[k] * patches[window[k]].values for k in members) / den
                value = agg[hr, hr]
            out[row, col] = min(max(value, 0.0), 1.0)
    return Image(out)


def reference_box_mean(img: Image, s: int) -> Image:
    """Unweighted mean over the centred ``(2*(s//2)+1)``-square window."""
    hs = s // 2
    padded = pad_mirror(img, hs).data
    out = np.empty(img.shape)
    for row in range(img.height):
        for col in range(img.width):
            out[row, col] = padded[row : row + 2 * hs + 1, col : col + 2 * hs + 1].mean()
    return Image(out)

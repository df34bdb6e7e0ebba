"""Public denoising entry points (NLM, NLSCEM, NLACM)."""

from __future__ import annotations

from ..image import Image, pad_array
from .kernels import ANCHOR_CODES, denoise_padded
from .params import Anchor, FilterParams

__all__ = ["denoise", "denoise_nlm", "denoise_clipped"]


def _run(img: Image, params: FilterParams, backend: str | None) -> Image:
    hs, hr = params.search_radius, params.patch_radius
    padded = pad_array(img.data, hs + hr)
    anchor_code = ANCHOR_CODES[params.anchor.value]
    out = denoise_padded(padded, img.height, img.width, hs, hr, params.decay, anchor_code, backend)
    return Image(out)


def denoise_nlm(img: Image, params: FilterParams, backend: str | None = None) -> Image:
    """Plain non-local means over the centred search window.

    Every pixel becomes the patch-similarity weighted mean of the window
    pixels, itself included with weight 1.
    """
    if params.anchor is not Anchor.NONE:
        raise ValueError(f"denoise_nlm expects anchor NONE, got {params.anchor.name}")
    return _run(img, params, backend)


def denoise_clipped(img: Image, params: FilterParams, backend: str | None = None) -> Image:
    """Sigma-clipped non-local means.

    The window's patch sums are clipped to ``anchor -/+ sd`` (mean anchor for
    NLSCEM, median anchor for NLACM) and the weighted mean is taken over the
    surviving patches only. When the clipped weights sum to zero the pixel
    falls back to the unclipped mean.
    """
    if params.anchor is Anchor.NONE:
        raise ValueError("denoise_clipped expects anchor MEAN or MEDIAN")
    return _run(img, params, backend)


def denoise(img: Image, params: FilterParams, backend: str | None = None) -> Image:
    """Dispatch on ``params.anchor``.

    ``backend`` selects ``"numba"`` or ``"numpy"``; by default numba is used
    unless ``NLCLIP_DISABLE_NUMBA`` is set.
    """
    if params.anchor is Anchor.NONE:
        return denoise_nlm(img, params, backend)
    return denoise_clipped(img, params, backend)

"""Non-local means denoising with sigma-clipped (NLSCEM) and median-clipped (NLACM) variants."""

from .filters import (
    Anchor,
    FilterParams,
    clip_limits,
    default_h,
    denoise,
    denoise_clipped,
    denoise_nlm,
    patch_sum,
    patch_weight,
    sd_about,
)
from .image import Image, Patch, PixelIndex, extract_patch, pad_mirror
from .metrics import EdgeProfile, QualityReport, extract_profile, mse, profile_rmse, psnr
from .noise import NoiseSpec, add_speckle, generate_checker, generate_step_edge
from .pgm import PGMError, read_pgm, write_pgm

__version__ = "0.1.0"

__all__ = [
    "Anchor",
    "EdgeProfile",
    "FilterParams",
    "Image",
    "NoiseSpec",
    "PGMError",
    "Patch",
    "PixelIndex",
    "QualityReport",
    "add_speckle",
    "clip_limits",
    "default_h",
    "denoise",
    "denoise_clipped",
    "denoise_nlm",
    "extract_patch",
    "extract_profile",
    "generate_checker",
    "generate_step_edge",
    "mse",
    "pad_mirror",
    "patch_sum",
    "patch_weight",
    "profile_rmse",
    "psnr",
    "read_pgm",
    "sd_about",
    "write_pgm",
]

from .engine import denoise, denoise_clipped, denoise_nlm
from .kernels import available_backends, default_backend
from .params import Anchor, FilterParams, default_h
from .reference import reference_box_mean, reference_denoise
from .stats import (
    ClippedSet,
    WindowStats,
    clip_limits,
    clipped_set,
    median,
    patch_sum,
    patch_weight,
    sd_about,
)

__all__ = [
    "Anchor",
    "ClippedSet",
    "FilterParams",
    "WindowStats",
    "available_backends",
    "clip_limits",
    "clipped_set",
    "default_backend",
    "default_h",
    "denoise",
    "denoise_clipped",
    "denoise_nlm",
    "median",
    "patch_sum",
    "patch_weight",
    "reference_box_mean",
    "reference_denoise",
    "sd_about",
]

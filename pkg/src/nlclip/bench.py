"""Speckle-noise sweeps comparing NLM, NLSCEM and NLACM."""

from __future__ import annotations

import io
import math
import time
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .filters import Anchor, FilterParams, default_h, denoise
from .image import Image
from .metrics import extract_profile, psnr
from .noise import NoiseDistribution, NoiseSpec, add_speckle, generate_checker, generate_step_edge
from .pgm import load_pgm

__all__ = [
    "TABLE_VARIANCES",
    "METHODS",
    "BenchRecord",
    "BenchConfig",
    "load_clean_image",
    "run_sweep",
    "records_to_csv",
    "mean_psnr",
    "edge_profiles",
    "profiles_to_csv",
    "render_svg",
    "fmt",
]

TABLE_VARIANCES = (0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.10)
METHODS = ("nlm", "nlscem", "nlacm")
CSV_HEADER = "image,method,variance,seed,psnr_db,wall_ms"


def fmt(x: float) -> str:
    """Six significant digits; infinities as ``inf``."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".6g")


@dataclass(frozen=True)
class BenchRecord:
    image_id: str
    method: str
    variance: float
    seed: int
    psnr_db: float
    wall_ms: float


@dataclass
class BenchConfig:
    """One sweep: every (variance, seed, method) combination.

    ``image`` is ``"checker"``, ``"edge"`` or a path to a PGM file. ``h=None``
    derives the smoothing parameter from each variance.
    """

    variances: Sequence[float] = TABLE_VARIANCES
    seeds: Sequence[int] = (1,)
    methods: Sequence[str] = METHODS
    image: str = "checker"
    size: int | None = None
    square: int = 32
    s: int = 10
    r: int = 3
    h: float | None = None
    normalize_distance: bool = False
    distribution: NoiseDistribution = NoiseDistribution.UNIFORM
    backend: str | None = None

    def __post_init__(self):
        self.variances = tuple(float(v) for v in self.variances)
        self.seeds = tuple(int(s) for s in self.seeds)
        self.methods = tuple(m.lower() for m in self.methods)
        if not self.variances or not self.seeds or not self.methods:
            raise ValueError("variances, seeds and methods must all be non-empty")
        if any(not v > 0 for v in self.variances):
            raise ValueError(f"noise variances must be > 0, got {self.variances}")
        # validates method names, s, r and an explicit h up front
        for m in self.methods:
            self.params_for(self.variances[0], Anchor.from_method(m))

    def params_for(self, variance: float, anchor: Anchor) -> FilterParams:
        h = self.h if self.h is not None else default_h(variance)
        return FilterParams(
            h=h, s=self.s, r=self.r, anchor=anchor, normalize_distance=self.normalize_distance
        )


def load_clean_image(image: str, size: int | None = None, square: int = 32) -> tuple[str, Image]:
    """Resolve an image source to ``(image_id, Image)``."""
    if image == "checker":
        n = size or 256
        return "checker", generate_checker(n, n, square)
    if image == "edge":
        n = size or 64
        return "edge", generate_step_edge(n, n)
    return image, load_pgm(image)


def run_sweep(cfg: BenchConfig) -> list[BenchRecord]:
    """Corrupt, denoise and score; records ordered variance, then seed, then method."""
    image_id, clean = load_clean_image(cfg.image, cfg.size, cfg.square)
    records = []
    for variance in cfg.variances:
        for seed in cfg.seeds:
            noisy = add_speckle(clean, NoiseSpec(variance, seed, cfg.distribution))
            for method in cfg.methods:
                params = cfg.params_for(variance, Anchor.from_method(method))
                t0 = time.perf_counter()
                out = denoise(noisy, params, cfg.backend)
                wall_ms = (time.perf_counter() - t0) * 1e3
                records.append(
                    BenchRecord(image_id, method, variance, seed, psnr(clean, out), wall_ms)
                )
    return records


def records_to_csv(records: Iterable[BenchRecord], include_timing: bool = False) -> str:
    """Serialize records; ``wall_ms`` is left empty unless ``include_timing``."""
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for rec in records:
        wall = fmt(rec.wall_ms) if include_timing else ""
        buf.write(
            f"{rec.image_id},{rec.method},{fmt(rec.variance)},{rec.seed},"
            f"{fmt(rec.psnr_db)},{wall}\n"
        )
    return buf.getvalue()


def mean_psnr(records: Iterable[BenchRecord]) -> dict[tuple[str, float], float]:
    """Average PSNR over seeds, keyed by ``(method, variance)``."""
    groups = defaultdict(list)
    for rec in records:
        groups[(rec.method, rec.variance)].append(rec.psnr_db)
    return {key: float(np.mean(vals)) for key, vals in groups.items()}


def edge_profiles(
    image: str = "edge",
    variance: float = 0.08,
    seed: int = 1,
    row: int | None = None,
    methods: Sequence[str] = METHODS,
    size: int | None = None,
    square: int = 32,
    s: int = 10,
    r: int = 3,
    h: float | None = None,
    normalize_distance: bool = False,
    backend: str | None = None,
) -> dict[str, np.ndarray]:
    """Scanline through the clean, noisy and denoised images.

    Returns an ordered mapping with keys ``position``, ``clean``, ``noisy``
    and one entry per method.
    """
    _, clean = load_clean_image(image, size, square)
    if row is None:
        row = clean.height // 2
    noisy = add_speckle(clean, NoiseSpec(variance, seed))
    cols = {
        "position": extract_profile(clean, row).positions,
        "clean": extract_profile(clean, row).amplitudes,
        "noisy": extract_profile(noisy, row).amplitudes,
    }
    for method in methods:
        params = FilterParams(
            h=h if h is not None else default_h(variance),
            s=s,
            r=r,
            anchor=Anchor.from_method(method),
            normalize_distance=normalize_distance,
        )
        cols[method.lower()] = extract_profile(denoise(noisy, params, backend), row).amplitudes
    return cols


def profiles_to_csv(cols: dict[str, np.ndarray]) -> str:
    names = list(cols)
    lines = [",".join(names)]
    for k in range(len(cols["position"])):
        cells = [str(int(cols["position"][k]))]
        cells += [fmt(float(cols[name][k])) for name in names[1:]]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def render_svg(records: Sequence[BenchRecord], width: int = 640, height: int = 400) -> str:
    """Seed-averaged PSNR against variance, one polyline per method."""
    means = mean_psnr(records)
    methods = list(dict.fromkeys(rec.method for rec in records))
    variances = sorted({rec.variance for rec in records})
    finite = [v for v in means.values() if math.isfinite(v)]
    lo, hi = (min(finite), max(finite)) if finite else (0.0, 1.0)
    if hi - lo < 1e-9:
        lo, hi = lo - 0.5, hi + 0.5
    xmin, xmax = variances[0], variances[-1]
    pad = 50

    def sx(v):
        if xmax == xmin:
            return width / 2
        return pad + (v - xmin) / (xmax - xmin) * (width - 2 * pad)

    def sy(p):
        return height - pad - (p - lo) / (hi - lo) * (height - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{width / 2}" y="{height - 10}" text-anchor="middle" font-size="12">noise variance</text>',
        f'<text x="15" y="{height / 2}" font-size="12" transform="rotate(-90 15 {height / 2})" '
        'text-anchor="middle">PSNR (dB)</text>',
    ]
    for v in variances:
        parts.append(
            f'<text x="{sx(v):.1f}" y="{height - pad + 15}" text-anchor="middle" '
            f'font-size="10">{fmt(v)}</text>'
        )
    for p in (lo, hi):
        parts.append(
            f'<text x="{pad - 5}" y="{sy(p):.1f}" text-anchor="end" font-size="10">{p:.2f}</text>'
        )
    for k, method in enumerate(methods):
        color = _COLORS[k % len(_COLORS)]
        pts = [
            (sx(v), sy(means[(method, v)]))
            for v in variances
            if (method, v) in means and math.isfinite(means[(method, v)])
        ]
        coords = " ".join(f"{x:.1f},{y:.1f}" for x, y in pts)
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{coords}"/>')
        parts.append(
            f'<text x="{width - pad + 5}" y="{pad + 15 * k}" font-size="11" fill="{color}">'
            f"{method.upper()}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

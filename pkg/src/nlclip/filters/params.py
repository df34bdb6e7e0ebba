"""Filter parameters and the default smoothing rule."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

__all__ = ["Anchor", "FilterParams", "default_h", "METHOD_ANCHORS"]


class Anchor(str, Enum):
    """Centre used for sigma clipping of the window's patch sums."""

    NONE = "none"  # plain non-local means
    MEAN = "mean"  # NLSCEM
    MEDIAN = "median"  # NLACM

    @classmethod
    def from_method(cls, method: str) -> "Anchor":
        try:
            return METHOD_ANCHORS[method.lower()]
        except KeyError:
            raise ValueError(
                f"unknown method {method!r}; expected one of {sorted(METHOD_ANCHORS)}"
            ) from None

    @property
    def method(self) -> str:
        return _ANCHOR_METHODS[self]


METHOD_ANCHORS = {"nlm": Anchor.NONE, "nlscem": Anchor.MEAN, "nlacm": Anchor.MEDIAN}
_ANCHOR_METHODS = {v: k for k, v in METHOD_ANCHORS.items()}


def default_h(noise_variance: float) -> float:
    """Smoothing parameter for a given speckle variance: ``10 * var * 100 / 255``."""
    if not noise_variance > 0:
        raise ValueError(f"noise variance must be > 0, got {noise_variance}")
    return 10.0 * noise_variance * 100.0 / 255.0


@dataclass(frozen=True)
class FilterParams:
    """Parameters shared by the three filters.

    Parameters
    ----------
    h : float
        Decay of the patch-similarity weight ``exp(-d2 / h**2)``.
    s : int
        Search-window size. The window is centred, with half-width
        ``s // 2``, so ``s=10`` gives an 11x11 window.
    r : int
        Odd patch side.
    anchor : Anchor
        ``NONE`` for plain NLM, ``MEAN`` for NLSCEM, ``MEDIAN`` for NLACM.
    normalize_distance : bool
        Divide the squared patch distance by the patch area ``r*r`` before
        weighting. Off by default (plain sum of squared differences).
    """

    h: float
    s: int = 10
    r: int = 3
    anchor: Anchor = Anchor.NONE
    normalize_distance: bool = False

    def __post_init__(self):
        object.__setattr__(self, "anchor", Anchor(self.anchor))
        if int(self.s) != self.s or self.s < 1:
            raise ValueError(f"search window s must be an integer >= 1, got {self.s}")
        if int(self.r) != self.r or self.r < 1 or self.r % 2 == 0:
            raise ValueError(f"patch side r must be a positive odd integer, got {self.r}")
        if not self.h > 0:
            raise ValueError(f"smoothing parameter h must be > 0, got {self.h}")

    @classmethod
    def for_variance(cls, variance: float, anchor: Anchor = Anchor.NONE, s: int = 10, r: int = 3,
                     normalize_distance: bool = False):
        return cls(h=default_h(variance), s=s, r=r, anchor=anchor,
                   normalize_distance=normalize_distance)

    @property
    def search_radius(self) -> int:
        return self.s // 2

    @property
    def patch_radius(self) -> int:
        return self.r // 2

    @property
    def window_side(self) -> int:
        return 2 * self.search_radius + 1

    @property
    def decay(self) -> float:
        """Denominator applied to the raw squared patch distance."""
        scale = self.r * self.r if self.normalize_distance else 1
        return self.h * self.h * scale

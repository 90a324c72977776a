"""Ink removal: threshold masking plus iterative nearest-neighbor fill.

Overwriting strokes are detected by a global intensity threshold and then
replaced, one synchronous sweep at a time, by the mean of each masked
pixel's already-valid neighbors. Sweeps read only the previous sweep's
buffer (Jacobi-style), so results do not depend on scan order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DimensionMismatch, FullyMaskedError
from .raster import BitMask, Raster, to_grayscale


class InkPolarity(str, Enum):
    """Whether ink pixels sit below (darker) or above (lighter) the threshold."""

    DARKER = "darker"
    LIGHTER = "lighter"


_OFFSETS_4 = ((-1, 0), (1, 0), (0, -1), (0, 1))
_OFFSETS_8 = _OFFSETS_4 + ((-1, -1), (-1, 1), (1, -1), (1, 1))


@dataclass(frozen=True)
class RestoreParams:
    threshold: float
    polarity: InkPolarity = InkPolarity.DARKER
    max_passes: int = 1024
    neighborhood: int = 8

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold {self.threshold} outside [0, 1]")
        object.__setattr__(self, "polarity", InkPolarity(self.polarity))
        if self.max_passes < 1:
            raise ValueError("max_passes must be >= 1")
        if self.neighborhood not in (4, 8):
            raise ValueError("neighborhood must be 4 or 8")


@dataclass(frozen=True)
class RestoreResult:
    """Restored image plus the diagnostic record of the run."""

    image: Raster
    masked_before: int
    masked_after: int
    passes_used: int

    def diagnostics_text(self) -> str:
        return (
            f"masked_before={self.masked_before}\n"
            f"masked_after={self.masked_after}\n"
            f"passes_used={self.passes_used}\n"
        )


def make_ink_mask(img: Raster, threshold: float, polarity: InkPolarity | str = InkPolarity.DARKER) -> BitMask:
    """Mark pixels strictly past the threshold on the ink side.

    A pixel exactly at the threshold counts as paper, so a clean image
    yields an empty mask.
    """
    if not img.is_gray:
        raise ValueError("ink mask is computed on a grayscale raster")
    polarity = InkPolarity(polarity)
    if polarity is InkPolarity.DARKER:
        bits = img.pixels < threshold
    else:
        bits = img.pixels > threshold
    return BitMask(bits)


def inpaint_iterative(
    img: Raster,
    mask: BitMask,
    *,
    neighborhood: int = 8,
    max_passes: int = 1024,
) -> tuple[Raster, int]:
    """Fill masked pixels by repeated synchronous neighbor averaging.

    Each pass assigns every masked pixel with at least one unmasked
    neighbor the arithmetic mean of those neighbors' values as of the
    start of the pass (per channel), then unmasks it. Passes repeat until
    the mask is empty or ``max_passes`` is reached. Unmasked pixels are
    never touched. Returns the filled raster and the number of passes run.
    """
    out, passes, _ = _sweep_fill(img, mask, neighborhood, max_passes)
    return out, passes


def _sweep_fill(img: Raster, mask: BitMask, neighborhood: int, max_passes: int) -> tuple[Raster, int, int]:
    if not mask.matches(img):
        raise DimensionMismatch(
            f"mask {mask.width}x{mask.height} does not match image {img.width}x{img.height}"
        )
    if neighborhood not in (4, 8):
        raise ValueError("neighborhood must be 4 or 8")
    bits = mask.bits
    if bits.all():
        raise FullyMaskedError("every pixel is masked; nothing to interpolate from")

    offsets = _OFFSETS_4 if neighborhood == 4 else _OFFSETS_8
    values = np.array(img.pixels, copy=True)
    remaining = bits.copy()
    passes = 0
    while remaining.any() and passes < max_passes:
        valid = ~remaining
        acc, cnt = _neighbor_sums(values, valid, offsets)
        fillable = remaining & (cnt > 0)
        if not fillable.any():
            break
        if values.ndim == 3:
            fill_vals = acc[fillable] / cnt[fillable][:, None]
        else:
            fill_vals = acc[fillable] / cnt[fillable]
        values[fillable] = fill_vals
        remaining &= ~fillable
        passes += 1
    return Raster(values), passes, int(remaining.sum())


def _neighbor_sums(values: np.ndarray, valid: np.ndarray, offsets) -> tuple[np.ndarray, np.ndarray]:
    """Per-pixel sum and count of valid neighbors, in fixed offset order."""
    h, w = valid.shape
    valid_f = valid.astype(np.float64)
    if values.ndim == 3:
        masked_vals = values * valid_f[:, :, None]
    else:
        masked_vals = values * valid_f
    acc = np.zeros_like(values)
    cnt = np.zeros((h, w))
    for dy, dx in offsets:
        dy0, dy1 = max(0, -dy), h - max(0, dy)
        dx0, dx1 = max(0, -dx), w - max(0, dx)
        sy0, sy1 = max(0, dy), h - max(0, -dy)
        sx0, sx1 = max(0, dx), w - max(0, -dx)
        acc[dy0:dy1, dx0:dx1] += masked_vals[sy0:sy1, sx0:sx1]
        cnt[dy0:dy1, dx0:dx1] += valid_f[sy0:sy1, sx0:sx1]
    return acc, cnt


def restore(img: Raster, params: RestoreParams) -> RestoreResult:
    """Detect ink on the luminance channel and fill it in every channel.

    Fill values are means of off-ink neighbors, so a second application
    with the same parameters recomputes an empty mask and is the identity
    whenever the first run cleared its mask.
    """
    gray = to_grayscale(img)
    mask = make_ink_mask(gray, params.threshold, params.polarity)
    masked_before = mask.count
    if masked_before == 0:
        return RestoreResult(img, 0, 0, 0)
    filled, passes, left = _sweep_fill(img, mask, params.neighborhood, params.max_passes)
    return RestoreResult(filled, masked_before, left, passes)

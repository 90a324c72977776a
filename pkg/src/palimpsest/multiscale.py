"""Undecimated multiscale decomposition and coefficient-domain filtering.

The decomposition smooths the image repeatedly with a separable B3-spline
kernel whose taps are spread apart ("holes") by powers of two, and keeps
the successive differences as detail planes. Because nothing is
subsampled, every plane has the source dimensions and the plain sum of
all planes reproduces the input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import convolve1d

from .errors import DimensionMismatch, FilterSpecError, KernelTooLarge
from .raster import Raster, clipped

# 1-D B3-spline smoothing taps; rows sum to 1, so constant images are
# fixed points and detail planes of a constant are exactly zero.
B3_KERNEL = np.array([1.0, 4.0, 6.0, 4.0, 1.0]) / 16.0

_BOUNDARY_MODES = {"mirror": "mirror", "periodic": "wrap"}


@dataclass(frozen=True, eq=False)
class WaveletStack:
    """Detail planes plus the smooth residual of a decomposition.

    Attributes
    ----------
    details : tuple of numpy.ndarray
        Signed detail planes, finest first. All share the source shape.
    residual : numpy.ndarray
        The remaining smooth plane after the last smoothing step.
    """

    details: tuple
    residual: np.ndarray

    def __post_init__(self):
        details = tuple(np.asarray(d, dtype=np.float64) for d in self.details)
        residual = np.asarray(self.residual, dtype=np.float64)
        if len(details) < 1:
            raise ValueError("a stack needs at least one detail plane")
        for d in details:
            if d.shape != residual.shape:
                raise DimensionMismatch(
                    f"plane shape {d.shape} does not match residual {residual.shape}"
                )
        object.__setattr__(self, "details", details)
        object.__setattr__(self, "residual", residual)

    @property
    def levels(self) -> int:
        return len(self.details)

    @property
    def source_dims(self) -> tuple[int, int]:
        h, w = self.residual.shape
        return (w, h)


@dataclass(frozen=True)
class FilterSpec:
    """Per-level soft thresholds and gain multipliers for detail planes."""

    gains: tuple
    soft_thresholds: tuple

    def __post_init__(self):
        gains = tuple(float(g) for g in self.gains)
        thresholds = tuple(float(t) for t in self.soft_thresholds)
        if len(gains) != len(thresholds):
            raise FilterSpecError(
                f"{len(gains)} gains but {len(thresholds)} thresholds"
            )
        if any(g < 0 for g in gains):
            raise FilterSpecError("gains must be >= 0")
        if any(not 0.0 <= t <= 1.0 for t in thresholds):
            raise FilterSpecError("soft thresholds must lie in [0, 1]")
        object.__setattr__(self, "gains", gains)
        object.__setattr__(self, "soft_thresholds", thresholds)

    @classmethod
    def neutral(cls, levels: int) -> "FilterSpec":
        """Unit gains, zero thresholds: filtering becomes the identity."""
        return cls((1.0,) * levels, (0.0,) * levels)


def _dilated_kernel(step: int) -> np.ndarray:
    if step == 1:
        return B3_KERNEL
    kernel = np.zeros(len(B3_KERNEL) + (len(B3_KERNEL) - 1) * (step - 1))
    kernel[::step] = B3_KERNEL
    return kernel


def _smooth(plane: np.ndarray, step: int, mode: str) -> np.ndarray:
    kernel = _dilated_kernel(step)
    tmp = convolve1d(plane, kernel, axis=0, mode=mode)
    return convolve1d(tmp, kernel, axis=1, mode=mode)


def atrous_decompose(img: Raster, levels: int, *, boundary: str = "mirror") -> WaveletStack:
    """Decompose a grayscale raster into detail planes and a residual.

    Parameters
    ----------
    img : Raster
        Single-channel input.
    levels : int
        Number of detail planes to extract (>= 1).
    boundary : {"mirror", "periodic"}
        Edge handling for the smoothing convolutions. Mirror is the
        production default; periodic makes shift covariance exact.

    Returns
    -------
    WaveletStack
        ``residual + sum(details)`` reproduces the input to within
        floating-point accumulation error.
    """
    if not img.is_gray:
        raise ValueError("decomposition operates on grayscale rasters")
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if boundary not in _BOUNDARY_MODES:
        raise ValueError(f"unknown boundary mode {boundary!r}")
    span = 4 * 2 ** (levels - 1)
    if span >= min(img.width, img.height):
        raise KernelTooLarge(
            f"level {levels} kernel span {span + 1} exceeds image side "
            f"{min(img.width, img.height)}"
        )
    mode = _BOUNDARY_MODES[boundary]
    current = img.pixels.astype(np.float64)
    details = []
    for j in range(levels):
        smoothed = _smooth(current, 2 ** j, mode)
        details.append(current - smoothed)
        current = smoothed
    return WaveletStack(tuple(details), current)


def atrous_reconstruct(stack: WaveletStack) -> Raster:
    """Sum residual and details pointwise, clamping into [0, 1]."""
    total = stack.residual.copy()
    for d in stack.details:
        total += d
    return clipped(total)


def apply_filter_spec(stack: WaveletStack, spec: FilterSpec) -> WaveletStack:
    """Soft-threshold each detail plane, then scale it by its gain.

    Each coefficient d becomes sign(d) * max(|d| - t, 0) * g. Thresholding
    happens before the gain so the two knobs compose predictably.
    """
    if len(spec.gains) != stack.levels:
        raise FilterSpecError(
            f"spec has {len(spec.gains)} levels but stack has {stack.levels}"
        )
    shaped = []
    for d, g, t in zip(stack.details, spec.gains, spec.soft_thresholds):
        if t > 0.0:
            d = np.sign(d) * np.maximum(np.abs(d) - t, 0.0)
        if g != 1.0:
            d = d * g
        shaped.append(d)
    return WaveletStack(tuple(shaped), stack.residual)


def wavelet_filter(img: Raster, levels: int, spec: FilterSpec, *, boundary: str = "mirror") -> Raster:
    """Decompose, shape the detail planes, and reconstruct."""
    stack = atrous_decompose(img, levels, boundary=boundary)
    return atrous_reconstruct(apply_filter_spec(stack, spec))


def detail_plane_raster(plane: np.ndarray) -> Raster:
    """Offset-encode a signed detail plane for dumping: stored = (d + 1) / 2."""
    return clipped((np.asarray(plane, dtype=np.float64) + 1.0) / 2.0)

"""Shared test utilities: independent oracles and fixture builders."""

import math

import numpy as np

from palimpsest import Raster


def psnr(a: np.ndarray, b: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB for unit-peak images."""
    mse = float(np.mean((np.asarray(a) - np.asarray(b)) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / mse)


def gradient_image(width: int, height: int) -> Raster:
    """Smooth linear ramp over both axes, values spanning [0, 1]."""
    ys = np.arange(height, dtype=np.float64)[:, None]
    xs = np.arange(width, dtype=np.float64)[None, :]
    return Raster((xs + ys) / (width + height - 2))


def random_raster(width: int, height: int, *, channels: int = 1, seed: int = 0,
                  grid: int | None = None) -> Raster:
    """Uniform random raster; with ``grid=n`` values snap to multiples of 1/n."""
    rng = np.random.default_rng(seed)
    shape = (height, width) if channels == 1 else (height, width, 3)
    values = rng.random(shape)
    if grid is not None:
        values = np.round(values * grid) / grid
    return Raster(values)


# --- independent multiscale smoothing oracle (plain loops) -------------------

B3_TAPS = [1 / 16, 4 / 16, 6 / 16, 4 / 16, 1 / 16]


def _oracle_index(i: int, n: int, boundary: str) -> int:
    if boundary == "periodic":
        return i % n
    # mirror without repeating the edge sample: ... 2 1 | 0 1 2 | 1 0 ...
    period = 2 * n - 2 if n > 1 else 1
    i = i % period
    return i if i < n else period - i


def smooth_oracle(plane, step: int, boundary: str = "mirror") -> np.ndarray:
    """Direct separable 5-tap smoothing with explicit loops."""
    plane = np.asarray(plane, dtype=np.float64)
    h, w = plane.shape
    tmp = np.zeros_like(plane)
    for y in range(h):
        for x in range(w):
            acc = 0.0
            for k, t in enumerate(B3_TAPS):
                acc += t * plane[_oracle_index(y + (k - 2) * step, h, boundary), x]
            tmp[y, x] = acc
    out = np.zeros_like(plane)
    for y in range(h):
        for x in range(w):
            acc = 0.0
            for k, t in enumerate(B3_TAPS):
                acc += t * tmp[y, _oracle_index(x + (k - 2) * step, w, boundary)]
            out[y, x] = acc
    return out


def decompose_oracle(pixels, levels: int, boundary: str = "mirror"):
    current = np.asarray(pixels, dtype=np.float64)
    details = []
    for j in range(levels):
        smoothed = smooth_oracle(current, 2 ** j, boundary)
        details.append(current - smoothed)
        current = smoothed
    return details, current

"""Deterministic synthetic fixtures: portraits, ink strokes, landmarks.

Everything here is seeded, so tests and demo scripts get byte-identical
material on every run without shipping any scanned artwork.
"""

from __future__ import annotations

import numpy as np

from .compare import LandmarkSet
from .raster import BitMask, Raster


def smooth_portrait(width: int, height: int) -> Raster:
    """A smooth, portrait-like gray field with all values in [0.35, 1].

    A soft radial highlight over a gentle horizontal ramp; smooth enough
    that neighbor-mean inpainting reconstructs it almost exactly.
    """
    ys = np.linspace(-1.0, 1.0, height)[:, None]
    xs = np.linspace(-1.0, 1.0, width)[None, :]
    face = np.exp(-2.2 * (xs ** 2 + ys ** 2))
    ramp = (xs + 1.0) / 2.0
    return Raster(0.35 + 0.25 * ramp + 0.4 * face)


def stroke_mask(width: int, height: int, *, thickness: int = 2, count: int = 6,
                seed: int = 0) -> BitMask:
    """Random straight pen strokes of the given thickness, as a mask."""
    rng = np.random.default_rng(seed)
    ys = np.arange(height, dtype=np.float64)[:, None]
    xs = np.arange(width, dtype=np.float64)[None, :]
    bits = np.zeros((height, width), dtype=bool)
    half = thickness / 2.0
    for _ in range(count):
        x0, x1 = rng.uniform(0, width - 1, size=2)
        y0, y1 = rng.uniform(0, height - 1, size=2)
        dx, dy = x1 - x0, y1 - y0
        norm2 = dx * dx + dy * dy
        if norm2 < 1.0:
            continue
        # Distance from each pixel center to the stroke segment.
        tt = np.clip(((xs - x0) * dx + (ys - y0) * dy) / norm2, 0.0, 1.0)
        dist = np.hypot(xs - (x0 + tt * dx), ys - (y0 + tt * dy))
        bits |= dist <= half
    return BitMask(bits)


def overwrite(img: Raster, strokes: BitMask, ink: float = 0.05) -> Raster:
    """Stamp ink-intensity strokes onto an image."""
    values = np.array(img.pixels, copy=True)
    if img.is_gray:
        values[strokes.bits] = ink
    else:
        values[strokes.bits, :] = ink
    return Raster(values)


def face_landmarks(*, center: tuple[float, float] = (0.0, 0.0), interocular: float = 40.0,
                   eye_ratio: float = 1.0, jitter: float = 0.0,
                   seed: int | None = None) -> LandmarkSet:
    """A canonical four-point face, optionally jittered.

    ``jitter`` displaces each point coordinate uniformly by up to that
    fraction of the interocular distance. Eye widths are exact (never
    jittered) with left/right ratio ``eye_ratio``.
    """
    cx, cy = center
    ioc = float(interocular)
    points = {
        "left_eye": (cx - ioc / 2.0, cy),
        "right_eye": (cx + ioc / 2.0, cy),
        "nose_tip": (cx, cy + 0.55 * ioc),
        "mouth_center": (cx, cy + 0.95 * ioc),
    }
    if jitter > 0.0:
        rng = np.random.default_rng(seed)
        points = {
            name: (x + rng.uniform(-jitter, jitter) * ioc,
                   y + rng.uniform(-jitter, jitter) * ioc)
            for name, (x, y) in points.items()
        }
    base_width = 0.28 * ioc
    ratio_root = float(np.sqrt(eye_ratio))
    return LandmarkSet(points, base_width * ratio_root, base_width / ratio_root)

"""Similarity transforms, resampling, and the portrait mirror rule.

A transform is reflect -> scale -> rotate -> translate, in that fixed
order. Applied to an image, the reflection axis and rotation center are
the canvas center; applied to bare points, the caller picks the center
(default: the origin). Image resampling is inverse-mapped bilinear, so a
pure reflection or the identity degenerates to an exact pixel copy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .raster import Raster, clipped


class PortraitKind(str, Enum):
    SELF_PORTRAIT = "self_portrait"
    PORTRAIT = "portrait"


@dataclass(frozen=True)
class SimilarityTransform:
    """reflect (flip x), uniform scale, rotation in degrees, then translate.

    Rotation is counterclockwise as seen on screen (y axis points down).
    """

    reflect: bool = False
    scale: float = 1.0
    rotation: float = 0.0
    translate: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError(f"scale must be positive, got {self.scale}")
        object.__setattr__(self, "translate", (float(self.translate[0]), float(self.translate[1])))

    @property
    def is_identity(self) -> bool:
        return (
            not self.reflect
            and self.scale == 1.0
            and self.rotation == 0.0
            and self.translate == (0.0, 0.0)
        )


IDENTITY = SimilarityTransform()


def reflect_h(img: Raster) -> Raster:
    """Flip about the vertical axis through the image center, bit-exact."""
    if img.is_gray:
        return Raster(img.pixels[:, ::-1])
    return Raster(img.pixels[:, ::-1, :])


def mirror_policy(a: PortraitKind | str, b: PortraitKind | str) -> bool:
    """Should exactly one of two portraits be reflected before comparison?

    A self-portrait is painted from a mirror while a direct portrait is
    not, so with the head held in the same pose the two show opposite
    sides of the face. Reflection is needed exactly when the kinds differ.
    """
    return PortraitKind(a) != PortraitKind(b)


def transform_points(t: SimilarityTransform, points, center: tuple[float, float] = (0.0, 0.0)) -> np.ndarray:
    """Apply the forward transform to an (N, 2) array of x, y points."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    cx, cy = center
    tx, ty = t.translate
    u = pts[:, 0] - cx
    v = pts[:, 1] - cy
    if t.reflect:
        u = -u
    u = u * t.scale
    v = v * t.scale
    th = math.radians(t.rotation)
    c, s = math.cos(th), math.sin(th)
    xr = c * u + s * v
    yr = -s * u + c * v
    return np.stack([xr + cx + tx, yr + cy + ty], axis=1)


def absolute_to_centered(t: SimilarityTransform, center: tuple[float, float]) -> SimilarityTransform:
    """Re-express an about-the-origin transform for application about ``center``.

    ``apply_transform`` interprets a transform's reflection axis and
    rotation center as the canvas center. Given a transform whose point
    action is defined about the origin (as landmark alignment returns),
    this adjusts the translation so the centered application realizes the
    same absolute mapping.
    """
    moved = transform_points(t, [center])[0]
    dx = moved[0] - center[0]
    dy = moved[1] - center[1]
    return SimilarityTransform(t.reflect, t.scale, t.rotation, (dx, dy))


def resample_onto(img: Raster, t: SimilarityTransform, width: int, height: int,
                  center: tuple[float, float] | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Inverse-map ``img`` through ``t`` onto a width x height grid.

    Returns the bilinearly sampled values and a boolean coverage mask;
    uncovered pixels hold unspecified (finite) values. ``center`` defaults
    to the center of the output grid.
    """
    if center is None:
        center = ((width - 1) / 2.0, (height - 1) / 2.0)
    cx, cy = center
    tx, ty = t.translate
    xs = np.arange(width, dtype=np.float64)[None, :] - cx - tx
    ys = np.arange(height, dtype=np.float64)[:, None] - cy - ty
    th = math.radians(t.rotation)
    c, s = math.cos(th), math.sin(th)
    # Inverse rotation, then inverse scale, then the (self-inverse) flip.
    u = c * xs - s * ys
    v = s * xs + c * ys
    if t.scale != 1.0:
        u = u / t.scale
        v = v / t.scale
    if t.reflect:
        u = -u
    u = u + cx
    v = v + cy
    return _bilinear(img.pixels, u, v)


def _bilinear(px: np.ndarray, u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    h, w = px.shape[:2]
    u, v = np.broadcast_arrays(u, v)
    inbounds = (u >= 0.0) & (u <= w - 1) & (v >= 0.0) & (v <= h - 1)
    x0 = np.clip(np.floor(u), 0, w - 1).astype(np.intp)
    y0 = np.clip(np.floor(v), 0, h - 1).astype(np.intp)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx = np.clip(u - x0, 0.0, 1.0)
    fy = np.clip(v - y0, 0.0, 1.0)
    if px.ndim == 3:
        fx = fx[..., None]
        fy = fy[..., None]
    top = (1.0 - fx) * px[y0, x0] + fx * px[y0, x1]
    bottom = (1.0 - fx) * px[y1, x0] + fx * px[y1, x1]
    values = (1.0 - fy) * top + fy * bottom
    return values, inbounds


def apply_transform(img: Raster, t: SimilarityTransform, fill: float = 1.0) -> Raster:
    """Resample through the inverse map; out-of-bounds samples take ``fill``.

    Output dimensions equal input dimensions. The identity transform and a
    pure reflection both reduce to exact pixel copies because the inverse
    coordinates stay on the integer grid.
    """
    if not 0.0 <= fill <= 1.0:
        raise ValueError(f"fill {fill} outside [0, 1]")
    values, inbounds = resample_onto(img, t, img.width, img.height)
    if img.channels == 3:
        inbounds = inbounds[..., None]
    out = np.where(inbounds, values, fill)
    return clipped(out)

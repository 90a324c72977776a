"""Landmark feature vectors, alignment, merging, and asymmetry measures.

Landmarks are human-annotated named points in pixel coordinates, stored
in a line-oriented sidecar file (``name x y`` per line). Feature vectors
normalize all pairwise distances among the four required points by the
eye-to-eye distance, which makes them invariant under any similarity
transform of the face.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import DegenerateLandmarks, MissingMeasurement, ParseError
from .geometry import SimilarityTransform, resample_onto, transform_points
from .raster import Raster, clipped

REQUIRED_LANDMARKS = ("left_eye", "right_eye", "nose_tip", "mouth_center")
_WIDTH_KEYS = ("left_eye_width", "right_eye_width")


@dataclass(frozen=True)
class LandmarkSet:
    """Named facial points plus optional per-eye widths (pixel lengths)."""

    points: dict = field(default_factory=dict)
    left_eye_width: float | None = None
    right_eye_width: float | None = None

    def __post_init__(self):
        pts = {str(k): (float(v[0]), float(v[1])) for k, v in self.points.items()}
        missing = [name for name in REQUIRED_LANDMARKS if name not in pts]
        if missing:
            raise ValueError(f"missing required landmarks: {', '.join(missing)}")
        for key in _WIDTH_KEYS:
            w = getattr(self, key)
            if w is not None and not w > 0:
                raise ValueError(f"{key} must be positive, got {w}")
        object.__setattr__(self, "points", pts)

    def __getitem__(self, name: str) -> tuple[float, float]:
        return self.points[name]

    def interocular(self) -> float:
        (ax, ay), (bx, by) = self.points["left_eye"], self.points["right_eye"]
        return math.hypot(ax - bx, ay - by)


class FeatureVector(NamedTuple):
    """Pairwise landmark distances divided by the eye-to-eye distance.

    The first component is the eye pair itself and is exactly 1 for any
    valid landmark set.
    """

    eyes: float
    left_eye_nose: float
    right_eye_nose: float
    left_eye_mouth: float
    right_eye_mouth: float
    nose_mouth: float


def feature_vector(lm: LandmarkSet) -> FeatureVector:
    """The six interocular-normalized distances, in canonical order."""
    ioc = lm.interocular()
    if ioc == 0.0:
        raise DegenerateLandmarks("left and right eye coincide")

    def d(a: str, b: str) -> float:
        (ax, ay), (bx, by) = lm[a], lm[b]
        return math.hypot(ax - bx, ay - by) / ioc

    return FeatureVector(
        eyes=d("left_eye", "right_eye"),
        left_eye_nose=d("left_eye", "nose_tip"),
        right_eye_nose=d("right_eye", "nose_tip"),
        left_eye_mouth=d("left_eye", "mouth_center"),
        right_eye_mouth=d("right_eye", "mouth_center"),
        nose_mouth=d("nose_tip", "mouth_center"),
    )


def landmark_similarity(a: FeatureVector, b: FeatureVector) -> float:
    """1 / (1 + RMS difference); 1.0 exactly for identical vectors."""
    diff = np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)
    rms = math.sqrt(float(np.mean(diff * diff)))
    return 1.0 / (1.0 + rms)


def eye_size_ratio(lm: LandmarkSet) -> float:
    """left_eye_width / right_eye_width; 1.0 means symmetric eyes."""
    if lm.left_eye_width is None or lm.right_eye_width is None:
        raise MissingMeasurement("eye widths were not annotated")
    return lm.left_eye_width / lm.right_eye_width


# ---------------------------------------------------------------------------
# Landmark sidecar files
# ---------------------------------------------------------------------------

def parse_landmarks(text: str) -> LandmarkSet:
    """Parse ``name x y`` lines; '#' starts a comment, widths are 2-token lines."""
    points: dict = {}
    widths: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 2 and parts[0] in _WIDTH_KEYS:
            try:
                widths[parts[0]] = float(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad width value {parts[1]!r}") from None
        elif len(parts) == 3:
            try:
                points[parts[0]] = (float(parts[1]), float(parts[2]))
            except ValueError:
                raise ParseError(f"line {lineno}: bad coordinates {raw.strip()!r}") from None
        else:
            raise ParseError(f"line {lineno}: expected 'name x y', got {raw.strip()!r}")
    try:
        return LandmarkSet(points, widths.get("left_eye_width"), widths.get("right_eye_width"))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def read_landmarks(path: str | Path) -> LandmarkSet:
    return parse_landmarks(Path(path).read_text())


def format_landmarks(lm: LandmarkSet) -> str:
    lines = [f"{name} {x!r} {y!r}" for name, (x, y) in lm.points.items()]
    if lm.left_eye_width is not None:
        lines.append(f"left_eye_width {lm.left_eye_width!r}")
    if lm.right_eye_width is not None:
        lines.append(f"right_eye_width {lm.right_eye_width!r}")
    return "\n".join(lines) + "\n"


def transform_landmarks(lm: LandmarkSet, t: SimilarityTransform,
                        center: tuple[float, float] = (0.0, 0.0)) -> LandmarkSet:
    """Move every point through ``t``; eye widths scale by ``t.scale``."""
    names = list(lm.points.keys())
    moved = transform_points(t, [lm.points[n] for n in names], center=center)
    points = {n: (float(p[0]), float(p[1])) for n, p in zip(names, moved)}
    lw = lm.left_eye_width * t.scale if lm.left_eye_width is not None else None
    rw = lm.right_eye_width * t.scale if lm.right_eye_width is not None else None
    return LandmarkSet(points, lw, rw)


def _swapped_name(name: str) -> str:
    if name.startswith("left_"):
        return "right_" + name[len("left_"):]
    if name.startswith("right_"):
        return "left_" + name[len("right_"):]
    return name


def swap_side_labels(lm: LandmarkSet) -> LandmarkSet:
    """Trade every ``left_*`` name (and eye width) with its ``right_*`` twin."""
    points = {_swapped_name(name): xy for name, xy in lm.points.items()}
    return LandmarkSet(points, lm.right_eye_width, lm.left_eye_width)


def reflect_landmarks(lm: LandmarkSet, width: int) -> LandmarkSet:
    """Mirror x coordinates across a width-pixel canvas and swap side labels.

    Left/right names are image-side labels here, so after the flip every
    ``left_*`` name trades places with its ``right_*`` counterpart (eye
    widths included).
    """
    points = {_swapped_name(name): ((width - 1) - x, y) for name, (x, y) in lm.points.items()}
    return LandmarkSet(points, lm.right_eye_width, lm.left_eye_width)


# ---------------------------------------------------------------------------
# Least-squares alignment
# ---------------------------------------------------------------------------

class LandmarkAlignment(NamedTuple):
    transform: SimilarityTransform
    residual_rms: float


def align_by_landmarks(src: LandmarkSet, dst: LandmarkSet,
                       allow_reflection: bool = False) -> LandmarkAlignment:
    """Least-squares similarity mapping src points onto dst by shared names.

    Solves the orthogonal Procrustes problem on the name-matched point
    pairs. With ``allow_reflection`` the determinant sign is free and the
    residual-minimizing choice wins; otherwise a proper rotation is
    enforced. The returned transform acts about the origin; use
    ``geometry.absolute_to_centered`` before applying it to an image.
    """
    names = sorted(set(src.points) & set(dst.points))
    s_pts = np.array([src.points[n] for n in names], dtype=np.float64)
    d_pts = np.array([dst.points[n] for n in names], dtype=np.float64)
    n = len(names)

    mu_s = s_pts.mean(axis=0)
    mu_d = d_pts.mean(axis=0)
    sc = s_pts - mu_s
    dc = d_pts - mu_d
    var_s = float((sc ** 2).sum()) / n
    if var_s <= 1e-24 or float((dc ** 2).sum()) <= 1e-24:
        raise DegenerateLandmarks("landmark set has no spatial spread")

    cov = dc.T @ sc / n
    u, d, vt = np.linalg.svd(cov)
    sign = np.eye(2)
    if not allow_reflection and np.linalg.det(u) * np.linalg.det(vt) < 0:
        sign[1, 1] = -1.0
    rot = u @ sign @ vt
    scale = float(np.trace(np.diag(d) @ sign)) / var_s
    if scale <= 0:
        raise DegenerateLandmarks("alignment collapsed to zero scale")
    shift = mu_d - scale * rot @ mu_s

    mapped = (scale * (rot @ s_pts.T)).T + shift
    residual_rms = math.sqrt(float(np.mean(np.sum((mapped - d_pts) ** 2, axis=1))))

    reflect = bool(np.linalg.det(rot) < 0)
    q = rot.copy()
    if reflect:
        q[:, 0] = -q[:, 0]
    rotation = math.degrees(math.atan2(q[0, 1], q[0, 0]))
    t = SimilarityTransform(reflect, scale, rotation, (float(shift[0]), float(shift[1])))
    return LandmarkAlignment(t, residual_rms)


# ---------------------------------------------------------------------------
# Compositing
# ---------------------------------------------------------------------------

def _widened(img: Raster) -> np.ndarray:
    return np.repeat(img.pixels[:, :, None], 3, axis=2) if img.is_gray else img.pixels


def blend(base: Raster, overlay: Raster, t: SimilarityTransform = SimilarityTransform(),
          alpha: float = 0.5, mode: str = "normal") -> Raster:
    """Transform overlay into the base frame and combine per pixel.

    ``normal`` mixes (1 - a) * base + a * overlay; ``multiply`` darkens the
    base by the overlay, fading with alpha. The transform acts about the
    base canvas center; pixels the overlay does not cover keep the base
    value. A gray/RGB pairing is widened to RGB.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha {alpha} outside [0, 1]")
    if mode not in ("normal", "multiply"):
        raise ValueError(f"unknown blend mode {mode!r}")
    channels = 3 if 3 in (base.channels, overlay.channels) else 1
    base_px = _widened(base) if channels == 3 else base.pixels
    over_src = Raster(_widened(overlay)) if (channels == 3 and overlay.is_gray) else overlay
    values, covered = resample_onto(over_src, t, base.width, base.height)
    a_eff = np.where(covered, alpha, 0.0)
    if channels == 3:
        a_eff = a_eff[..., None]
    if mode == "normal":
        out = (1.0 - a_eff) * base_px + a_eff * values
    else:
        out = base_px * ((1.0 - a_eff) + a_eff * values)
    return clipped(out)


def side_by_side(a: Raster, b: Raster, gutter: int = 0, gutter_value: float = 1.0) -> Raster:
    """Top-aligned horizontal composite with a solid gutter column."""
    if gutter < 0:
        raise ValueError("gutter must be >= 0")
    if not 0.0 <= gutter_value <= 1.0:
        raise ValueError(f"gutter_value {gutter_value} outside [0, 1]")
    channels = 3 if 3 in (a.channels, b.channels) else 1
    a_px = _widened(a) if channels == 3 else a.pixels
    b_px = _widened(b) if channels == 3 else b.pixels
    height = max(a.height, b.height)
    width = a.width + gutter + b.width
    shape = (height, width) if channels == 1 else (height, width, 3)
    canvas = np.full(shape, gutter_value, dtype=np.float64)
    canvas[:a.height, :a.width] = a_px
    canvas[:b.height, a.width + gutter:] = b_px
    return Raster(canvas)


def asymmetry_map(img: Raster, axis_x: int) -> Raster:
    """Absolute difference between each pixel and its mirror across a column.

    Columns whose mirror falls outside the image map to 0. A raster that
    is bilaterally symmetric about ``axis_x`` therefore yields all zeros.
    """
    if not img.is_gray:
        raise ValueError("asymmetry map operates on grayscale rasters")
    if not 0 <= axis_x < img.width:
        raise ValueError(f"axis_x {axis_x} outside [0, {img.width - 1}]")
    w = img.width
    x = np.arange(w)
    mx = 2 * axis_x - x
    inb = (mx >= 0) & (mx < w)
    out = np.zeros_like(img.pixels)
    out[:, inb] = np.abs(img.pixels[:, x[inb]] - img.pixels[:, mx[inb]])
    return Raster(out)

import numpy as np
import pytest

from palimpsest import eye_size_ratio
from palimpsest.synthetic import face_landmarks, overwrite, smooth_portrait, stroke_mask


def test_portrait_stays_well_above_ink_threshold():
    img = smooth_portrait(128, 128)
    assert img.pixels.min() >= 0.35
    assert img.pixels.max() <= 1.0


def test_stroke_mask_is_sparse_and_deterministic():
    a = stroke_mask(128, 128, thickness=2, count=6, seed=9)
    b = stroke_mask(128, 128, thickness=2, count=6, seed=9)
    assert np.array_equal(a.bits, b.bits)
    assert 0 < a.count <= 0.15 * 128 * 128


def test_overwrite_stamps_only_masked_pixels():
    img = smooth_portrait(32, 32)
    strokes = stroke_mask(32, 32, thickness=2, count=3, seed=1)
    dirty = overwrite(img, strokes, ink=0.05)
    assert np.all(dirty.pixels[strokes.bits] == 0.05)
    assert np.array_equal(dirty.pixels[~strokes.bits], img.pixels[~strokes.bits])


def test_face_landmarks_geometry():
    lm = face_landmarks(center=(50.0, 40.0), interocular=30.0, eye_ratio=1.1)
    assert lm.interocular() == 30.0
    assert eye_size_ratio(lm) == pytest.approx(1.1, abs=1e-12)
    jittered = face_landmarks(interocular=30.0, jitter=0.02, seed=3)
    assert jittered.points != face_landmarks(interocular=30.0).points

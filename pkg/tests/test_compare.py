import math

import numpy as np
import pytest

from palimpsest import (
    DegenerateLandmarks,
    IDENTITY,
    LandmarkSet,
    MissingMeasurement,
    ParseError,
    Raster,
    SimilarityTransform,
    align_by_landmarks,
    asymmetry_map,
    blend,
    eye_size_ratio,
    feature_vector,
    format_landmarks,
    landmark_similarity,
    parse_landmarks,
    reflect_landmarks,
    side_by_side,
    swap_side_labels,
    transform_landmarks,
)
from palimpsest.synthetic import face_landmarks

from helpers import random_raster

SQUARE_FACE = LandmarkSet({
    "left_eye": (0.0, 0.0),
    "right_eye": (2.0, 0.0),
    "nose_tip": (1.0, 1.0),
    "mouth_center": (1.0, 2.0),
})


def _apply_similarity(points, *, scale=1.0, rotation_deg=0.0, shift=(0.0, 0.0), flip=False):
    """Independent forward similarity used to generate test data."""
    th = math.radians(rotation_deg)
    c, s = math.cos(th), math.sin(th)
    out = {}
    for name, (x, y) in points.items():
        if flip:
            x = -x
        x, y = scale * x, scale * y
        xr = c * x + s * y
        yr = -s * x + c * y
        out[name] = (xr + shift[0], yr + shift[1])
    return out


# --- feature vectors ----------------------------------------------------------

def test_feature_vector_hand_arithmetic():
    v = feature_vector(SQUARE_FACE)
    expected = (1.0, math.sqrt(2) / 2, math.sqrt(2) / 2,
                math.sqrt(5) / 2, math.sqrt(5) / 2, 0.5)
    assert v == pytest.approx(expected, abs=1e-12)
    assert v.eyes == 1.0


def test_feature_vector_is_similarity_invariant():
    base = feature_vector(SQUARE_FACE)
    rng = np.random.default_rng(101)
    for _ in range(100):
        moved = _apply_similarity(
            SQUARE_FACE.points,
            scale=float(rng.uniform(0.5, 2.0)),
            rotation_deg=float(rng.uniform(-180.0, 180.0)),
            shift=(float(rng.uniform(-50, 50)), float(rng.uniform(-50, 50))),
            flip=bool(rng.integers(2)),
        )
        v = feature_vector(LandmarkSet(moved))
        assert np.allclose(v, base, atol=1e-9)


def test_feature_vector_rejects_coincident_eyes():
    lm = LandmarkSet({
        "left_eye": (1.0, 1.0), "right_eye": (1.0, 1.0),
        "nose_tip": (0.0, 0.0), "mouth_center": (2.0, 2.0),
    })
    with pytest.raises(DegenerateLandmarks):
        feature_vector(lm)


def test_similarity_score_endpoints():
    v = feature_vector(SQUARE_FACE)
    assert landmark_similarity(v, v) == 1.0
    shifted = tuple(c + 1.0 for c in v)
    assert landmark_similarity(v, type(v)(*shifted)) == pytest.approx(0.5, abs=1e-12)


def test_similarity_is_symmetric_and_monotone():
    v = feature_vector(SQUARE_FACE)
    closer = type(v)(*(c + 0.01 for c in v))
    farther = type(v)(*(c + 0.05 for c in v))
    assert landmark_similarity(v, closer) == landmark_similarity(closer, v)
    assert landmark_similarity(v, closer) > landmark_similarity(v, farther)


def test_one_percent_jitter_scores_high():
    # Frozen fixture pair: the canonical face against a copy whose points
    # were jittered by up to 1% of the interocular distance (seed 4).
    clean = face_landmarks(interocular=100.0)
    jittered = face_landmarks(interocular=100.0, jitter=0.01, seed=4)
    score = landmark_similarity(feature_vector(clean), feature_vector(jittered))
    assert score >= 0.99
    assert score < 1.0


# --- alignment ------------------------------------------------------------------

def test_alignment_of_identical_sets_is_the_identity():
    result = align_by_landmarks(SQUARE_FACE, SQUARE_FACE)
    t = result.transform
    assert not t.reflect
    assert t.scale == pytest.approx(1.0, abs=1e-12)
    assert t.rotation == pytest.approx(0.0, abs=1e-12)
    assert t.translate == pytest.approx((0.0, 0.0), abs=1e-12)
    assert result.residual_rms <= 1e-12


def test_alignment_recovers_rotation_and_scale():
    moved = _apply_similarity(SQUARE_FACE.points, scale=1.5, rotation_deg=10.0, shift=(4.0, -2.0))
    result = align_by_landmarks(SQUARE_FACE, LandmarkSet(moved))
    assert result.transform.scale == pytest.approx(1.5, abs=1e-6)
    assert result.transform.rotation == pytest.approx(10.0, abs=1e-6)
    assert result.residual_rms <= 1e-9


def test_alignment_detects_a_pure_reflection():
    flipped = _apply_similarity(SQUARE_FACE.points, flip=True)
    result = align_by_landmarks(SQUARE_FACE, LandmarkSet(flipped), allow_reflection=True)
    assert result.transform.reflect is True
    assert result.residual_rms <= 1e-9


def test_alignment_without_reflection_stays_proper():
    flipped = _apply_similarity(SQUARE_FACE.points, flip=True)
    result = align_by_landmarks(SQUARE_FACE, LandmarkSet(flipped), allow_reflection=False)
    assert result.transform.reflect is False
    assert result.residual_rms > 1e-3  # reflection denied, fit must be worse


def test_random_procrustes_recovery():
    rng = np.random.default_rng(202)
    for _ in range(100):
        scale = float(rng.uniform(0.5, 2.0))
        rotation = float(rng.uniform(-180.0, 180.0))
        shift = (float(rng.uniform(-30, 30)), float(rng.uniform(-30, 30)))
        flip = bool(rng.integers(2))
        moved = _apply_similarity(
            SQUARE_FACE.points, scale=scale, rotation_deg=rotation, shift=shift, flip=flip)
        t = align_by_landmarks(SQUARE_FACE, LandmarkSet(moved), allow_reflection=True).transform
        assert t.reflect == flip
        assert t.scale == pytest.approx(scale, abs=1e-6)
        diff = (t.rotation - rotation + 180.0) % 360.0 - 180.0
        assert abs(diff) <= 1e-6
        assert t.translate == pytest.approx(shift, abs=1e-6)
        # and the recovered transform maps src onto dst
        moved_pts = transform_landmarks(SQUARE_FACE, t)
        for name in moved:
            assert moved_pts.points[name] == pytest.approx(moved[name], abs=1e-6)


def test_alignment_rejects_zero_spread():
    pile = LandmarkSet({name: (3.0, 3.0) for name in SQUARE_FACE.points})
    with pytest.raises(DegenerateLandmarks):
        align_by_landmarks(pile, pile)


# --- landmark bookkeeping ---------------------------------------------------------

def test_transform_landmarks_scales_eye_widths():
    lm = face_landmarks(interocular=40.0, eye_ratio=1.2)
    moved = transform_landmarks(lm, SimilarityTransform(scale=2.0))
    assert moved.left_eye_width == pytest.approx(2 * lm.left_eye_width)
    assert eye_size_ratio(moved) == pytest.approx(eye_size_ratio(lm), abs=1e-12)


def test_reflect_landmarks_flips_and_swaps():
    lm = LandmarkSet(
        {**SQUARE_FACE.points, "left_cheek": (0.5, 1.5)},
        left_eye_width=12.0, right_eye_width=10.0,
    )
    out = reflect_landmarks(lm, width=10)
    assert out.points["right_eye"] == (9.0 - 0.0, 0.0)   # was left_eye at x=0
    assert out.points["left_eye"] == (9.0 - 2.0, 0.0)    # was right_eye at x=2
    assert out.points["right_cheek"] == (9.0 - 0.5, 1.5)
    assert out.left_eye_width == 10.0
    assert out.right_eye_width == 12.0
    # distances are untouched, so the feature vector is too
    assert feature_vector(out) == pytest.approx(feature_vector(lm), abs=1e-12)


def test_swap_side_labels_only_renames():
    lm = LandmarkSet(SQUARE_FACE.points, 12.0, 10.0)
    out = swap_side_labels(lm)
    assert out.points["left_eye"] == SQUARE_FACE.points["right_eye"]
    assert out.left_eye_width == 10.0


def test_eye_size_ratio():
    assert eye_size_ratio(LandmarkSet(SQUARE_FACE.points, 10.0, 10.0)) == 1.0
    assert eye_size_ratio(LandmarkSet(SQUARE_FACE.points, 12.0, 10.0)) == pytest.approx(1.2)
    with pytest.raises(MissingMeasurement):
        eye_size_ratio(SQUARE_FACE)


def test_generated_eye_ratio_is_recovered_on_both_faces():
    a = face_landmarks(interocular=80.0, eye_ratio=1.1, jitter=0.01, seed=5)
    b = face_landmarks(interocular=120.0, eye_ratio=1.1, jitter=0.01, seed=6)
    ra, rb = eye_size_ratio(a), eye_size_ratio(b)
    assert ra > 1.0 and rb > 1.0
    assert abs(ra - rb) < 0.05


# --- landmark files ----------------------------------------------------------------

LANDMARK_TEXT = """\
# fixture face
left_eye 10.0 20.0
right_eye 30 20  # trailing comment
nose_tip 20 32.5
mouth_center 20 40
chin 20 55          # unknown name, kept but unused
left_eye_width 6.5
right_eye_width 6.0
"""


def test_parse_landmarks_round_trip():
    lm = parse_landmarks(LANDMARK_TEXT)
    assert lm.points["left_eye"] == (10.0, 20.0)
    assert lm.points["chin"] == (20.0, 55.0)
    assert lm.left_eye_width == 6.5
    again = parse_landmarks(format_landmarks(lm))
    assert again.points == lm.points
    assert again.left_eye_width == lm.left_eye_width


@pytest.mark.parametrize("text", [
    "left_eye 1\n",                       # wrong arity
    "left_eye a b\n",                     # bad numbers
    "left_eye 0 0\nright_eye 1 0\n",      # required names missing
    "left_eye_width nope\n",
])
def test_parse_landmarks_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_landmarks(text)


def test_landmark_set_requires_positive_widths():
    with pytest.raises(ValueError):
        LandmarkSet(SQUARE_FACE.points, left_eye_width=0.0, right_eye_width=1.0)


# --- blending -----------------------------------------------------------------------

def test_blend_alpha_zero_returns_base_bit_exact():
    base = random_raster(9, 7, seed=40)
    overlay = random_raster(9, 7, seed=41)
    out = blend(base, overlay, IDENTITY, alpha=0.0)
    assert np.array_equal(out.pixels, base.pixels)


def test_blend_alpha_one_identity_returns_overlay_bit_exact():
    base = random_raster(9, 7, seed=42)
    overlay = random_raster(9, 7, seed=43)
    out = blend(base, overlay, IDENTITY, alpha=1.0)
    assert np.array_equal(out.pixels, overlay.pixels)


def test_blend_half_mixes_uniform_fields():
    base = Raster(np.full((4, 4), 0.2))
    overlay = Raster(np.full((4, 4), 0.6))
    out = blend(base, overlay, IDENTITY, alpha=0.5)
    assert np.allclose(out.pixels, 0.4, atol=1e-15)


def test_blend_multiply_mode():
    base = Raster(np.full((2, 2), 0.5))
    overlay = Raster(np.full((2, 2), 0.5))
    out = blend(base, overlay, IDENTITY, alpha=1.0, mode="multiply")
    assert np.allclose(out.pixels, 0.25, atol=1e-15)
    half = blend(base, overlay, IDENTITY, alpha=0.5, mode="multiply")
    assert np.allclose(half.pixels, 0.5 * (0.5 + 0.5 * 0.5), atol=1e-15)


def test_blend_keeps_base_where_overlay_does_not_cover():
    base = Raster(np.full((4, 8), 0.25))
    overlay = Raster(np.ones((4, 8)))
    out = blend(base, overlay, SimilarityTransform(translate=(6.0, 0.0)), alpha=1.0)
    assert np.array_equal(out.pixels[:, :6], np.full((4, 6), 0.25))
    assert np.array_equal(out.pixels[:, 6:], np.ones((4, 2)))


def test_blend_promotes_gray_overlay_onto_rgb_base():
    base = random_raster(5, 5, channels=3, seed=44)
    overlay = random_raster(5, 5, channels=1, seed=45)
    out = blend(base, overlay, IDENTITY, alpha=1.0)
    assert out.channels == 3
    assert np.array_equal(out.pixels[..., 0], overlay.pixels)


# --- side by side --------------------------------------------------------------------

def test_side_by_side_dimension_arithmetic():
    a = random_raster(2, 2, seed=50)
    b = random_raster(2, 2, seed=51)
    out = side_by_side(a, b, gutter=1, gutter_value=0.5)
    assert (out.width, out.height) == (5, 2)
    assert np.array_equal(out.pixels[:, :2], a.pixels)
    assert np.array_equal(out.pixels[:, 2], np.full(2, 0.5))
    assert np.array_equal(out.pixels[:, 3:], b.pixels)


def test_side_by_side_duplicates_with_zero_gutter():
    a = random_raster(3, 3, seed=52)
    out = side_by_side(a, a, gutter=0)
    assert np.array_equal(out.pixels[:, :3], out.pixels[:, 3:])


def test_side_by_side_fill_regions_match_enumeration_oracle():
    a = random_raster(2, 3, seed=53)
    b = random_raster(3, 5, seed=54)
    gutter, gv = 2, 0.75
    out = side_by_side(a, b, gutter=gutter, gutter_value=gv)
    assert (out.width, out.height) == (2 + gutter + 3, 5)
    for y in range(out.height):
        for x in range(out.width):
            if x < 2:
                expected = a.pixels[y, x] if y < 3 else gv
            elif x < 2 + gutter:
                expected = gv
            else:
                expected = b.pixels[y, x - 2 - gutter]
            assert out.pixels[y, x] == expected


# --- asymmetry -------------------------------------------------------------------------

def test_symmetric_image_maps_to_zero():
    half = np.random.default_rng(60).random((5, 3))
    sym = Raster(np.hstack([half, half[:, -2::-1]]))  # odd width, shared center column
    out = asymmetry_map(sym, axis_x=2)
    assert np.array_equal(out.pixels, np.zeros_like(sym.pixels))


def test_three_pixel_hand_case():
    img = Raster(np.array([[0.0, 0.5, 1.0]]))
    out = asymmetry_map(img, axis_x=1)
    assert out.pixels.tolist() == [[1.0, 0.0, 1.0]]


def test_map_is_symmetric_about_the_axis():
    img = random_raster(9, 6, seed=61)
    axis = 3
    out = asymmetry_map(img, axis_x=axis)
    for x in range(9):
        mx = 2 * axis - x
        if 0 <= mx < 9:
            assert np.array_equal(out.pixels[:, x], out.pixels[:, mx])


def test_zero_map_iff_symmetric():
    img = random_raster(7, 4, seed=62)
    out = asymmetry_map(img, axis_x=3)
    assert out.pixels.max() > 0  # a random image is not symmetric
    rebuilt = np.array(img.pixels, copy=True)
    rebuilt[:, 4:] = rebuilt[:, 2::-1]
    assert asymmetry_map(Raster(rebuilt), axis_x=3).pixels.max() == 0.0


def test_asymmetry_bounds_and_channel_check():
    img = random_raster(4, 4, seed=63)
    with pytest.raises(ValueError):
        asymmetry_map(img, axis_x=4)
    with pytest.raises(ValueError):
        asymmetry_map(random_raster(4, 4, channels=3, seed=64), axis_x=2)

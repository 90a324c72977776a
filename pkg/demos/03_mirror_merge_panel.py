"""Normalizing and merging two portraits
=========================================

A self-portrait is painted from a mirror, so against a direct portrait of
the same sitter in the same pose it shows the opposite side of the face.
The mirror rule decides the reflection, landmark alignment finds the
small rotation/scale, and the normalized pair is merged and paneled.
"""

from palimpsest import (
    SimilarityTransform,
    absolute_to_centered,
    align_by_landmarks,
    apply_transform,
    blend,
    mirror_policy,
    reflect_h,
    reflect_landmarks,
    side_by_side,
    to_grayscale,
    transform_landmarks,
    write_image,
)
from palimpsest.synthetic import face_landmarks, smooth_portrait

from _common import OUT_DIR

# Stand-ins for two works: a direct portrait, and a mirror-reversed
# self-portrait of the same synthetic sitter whose head sits at a
# slightly different angle.
portrait = to_grayscale(smooth_portrait(96, 88))
portrait_lm = face_landmarks(center=(47.0, 36.0), interocular=30.0, eye_ratio=1.1)

tilt = SimilarityTransform(rotation=4.0, scale=0.95)
tilt_center = ((portrait.width - 1) / 2, (portrait.height - 1) / 2)
self_portrait = reflect_h(apply_transform(portrait, tilt, fill=1.0))
self_portrait_lm = reflect_landmarks(
    transform_landmarks(portrait_lm, tilt, center=tilt_center), portrait.width)

# The two depict opposite facial sides, so exactly one must be reflected.
need_flip = mirror_policy("portrait", "self_portrait")
print(f"mirror rule says reflect one of them: {need_flip}")
if need_flip:
    self_portrait = reflect_h(self_portrait)
    self_portrait_lm = reflect_landmarks(self_portrait_lm, self_portrait.width)

# Least-squares alignment of the annotated points gives the remaining
# similarity; apply it about the target canvas center.
alignment = align_by_landmarks(self_portrait_lm, portrait_lm)
t = alignment.transform
print(f"alignment: scale {t.scale:.4f}, rotation {t.rotation:.3f} deg, "
      f"residual rms {alignment.residual_rms:.2e}px")
center = ((portrait.width - 1) / 2, (portrait.height - 1) / 2)
aligned = apply_transform(self_portrait, absolute_to_centered(t, center), fill=1.0)

# Half-opacity merge shows how well the two faces agree; the panel shows
# them side by side for the eye to check.
merged = blend(portrait, aligned, alpha=0.5)
panel = side_by_side(portrait, aligned, gutter=5, gutter_value=1.0)
write_image(OUT_DIR / "merged.pgm", merged)
write_image(OUT_DIR / "panel.pgm", panel)
print(f"wrote {OUT_DIR / 'merged.pgm'} and {OUT_DIR / 'panel.pgm'}")

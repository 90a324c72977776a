"""Removing handwriting from a sketch
=====================================

A synthetic portrait-like field is overwritten with dark pen strokes and
then recovered in two moves: threshold the ink into a mask and refill it
from its neighbors, pass by pass, then run a gentle multiscale sharpen.
"""

from palimpsest import FilterSpec, RestoreParams, restore, side_by_side, wavelet_filter, write_image
from palimpsest.synthetic import overwrite, smooth_portrait, stroke_mask

from _common import OUT_DIR

# Build the "before" image: a clean 128x128 field with 10 ink strokes on top.
clean = smooth_portrait(128, 128)
strokes = stroke_mask(128, 128, thickness=3, count=10, seed=11)
dirty = overwrite(clean, strokes, ink=0.05)
print(f"stroked pixels: {strokes.count} ({100 * strokes.count / 128**2:.1f}% of the image)")

# Ink is far darker than any paper tone here, so a global threshold finds
# exactly the strokes; each fill pass peels one ring off every stroke.
result = restore(dirty, RestoreParams(threshold=0.2, polarity="darker"))
print(f"masked {result.masked_before} pixels, filled in {result.passes_used} passes, "
      f"{result.masked_after} left")

# A mild detail boost on the finest two scales crisps the result.
sharpened = wavelet_filter(result.image, 4, FilterSpec((1.3, 1.15, 1.0, 1.0), (0.0,) * 4))

panel = side_by_side(dirty, sharpened, gutter=6, gutter_value=1.0)
write_image(OUT_DIR / "restore_before_after.png", panel)
print(f"wrote {OUT_DIR / 'restore_before_after.png'}")

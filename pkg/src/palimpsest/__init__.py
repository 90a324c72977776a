"""Digital restoration of overwritten drawings and portrait comparison.

The toolkit covers four stages that compose into one workflow: remove
overwriting ink by threshold masking and iterative neighbor fill, sharpen
or denoise with an undecimated multiscale filter, normalize geometry
(reflection, rotation, scale, grayscale) including the self-portrait
mirror rule, and quantify facial correspondence through normalized
landmark distances and bilateral asymmetry maps.
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateLandmarks,
    DimensionMismatch,
    FilterSpecError,
    FullyMaskedError,
    KernelTooLarge,
    MissingMeasurement,
    PalimpsestError,
    ParseError,
    UnsupportedFormat,
)
from .raster import (
    BitMask,
    Raster,
    load_png,
    load_pnm,
    read_image,
    save_png,
    save_pnm,
    to_grayscale,
    write_image,
)
from .restore import (
    InkPolarity,
    RestoreParams,
    RestoreResult,
    inpaint_iterative,
    make_ink_mask,
    restore,
)
from .multiscale import (
    FilterSpec,
    WaveletStack,
    apply_filter_spec,
    atrous_decompose,
    atrous_reconstruct,
    detail_plane_raster,
    wavelet_filter,
)
from .geometry import (
    IDENTITY,
    PortraitKind,
    SimilarityTransform,
    absolute_to_centered,
    apply_transform,
    mirror_policy,
    reflect_h,
    transform_points,
)
from .compare import (
    FeatureVector,
    LandmarkAlignment,
    LandmarkSet,
    align_by_landmarks,
    asymmetry_map,
    blend,
    eye_size_ratio,
    feature_vector,
    format_landmarks,
    landmark_similarity,
    parse_landmarks,
    read_landmarks,
    reflect_landmarks,
    side_by_side,
    swap_side_labels,
    transform_landmarks,
)

__all__ = [
    "__version__",
    # errors
    "PalimpsestError", "ParseError", "UnsupportedFormat", "DimensionMismatch",
    "FullyMaskedError", "KernelTooLarge", "FilterSpecError",
    "DegenerateLandmarks", "MissingMeasurement",
    # raster
    "Raster", "BitMask", "load_pnm", "save_pnm", "load_png", "save_png",
    "read_image", "write_image", "to_grayscale",
    # restore
    "InkPolarity", "RestoreParams", "RestoreResult",
    "make_ink_mask", "inpaint_iterative", "restore",
    # multiscale
    "WaveletStack", "FilterSpec", "atrous_decompose", "atrous_reconstruct",
    "apply_filter_spec", "wavelet_filter", "detail_plane_raster",
    # geometry
    "SimilarityTransform", "IDENTITY", "PortraitKind", "reflect_h",
    "apply_transform", "transform_points", "absolute_to_centered", "mirror_policy",
    # compare
    "LandmarkSet", "FeatureVector", "LandmarkAlignment", "feature_vector",
    "landmark_similarity", "align_by_landmarks", "transform_landmarks",
    "reflect_landmarks", "swap_side_labels", "parse_landmarks", "read_landmarks",
    "format_landmarks", "blend", "side_by_side", "eye_size_ratio", "asymmetry_map",
]

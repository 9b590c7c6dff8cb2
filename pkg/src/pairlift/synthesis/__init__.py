from .glasses import (
    EyeglassParams,
    Landmarks,
    ellipse_mask,
    glasses_mask,
    sample_glasses_geometry,
    segment_mask,
    synthesize_eyeglasses,
)
from .oracle import TranslationOracle, build_pseudo_paired
from .shapes import (
    ShapeWorldSpec,
    decode_photo,
    image_to_labels,
    labels_to_image,
    majority_filter,
    make_procedural_domain,
    render_photo,
    sample_label_grid,
)
from .faces import (
    NATURAL_GLASSES,
    SYNTHETIC_GLASSES,
    FaceWorldSpec,
    add_natural_overlay,
    face_landmarks,
    identity_of,
    make_face_domain,
    render_clean_face,
)

__all__ = [
    "EyeglassParams", "Landmarks", "ellipse_mask", "glasses_mask",
    "sample_glasses_geometry", "segment_mask", "synthesize_eyeglasses",
    "TranslationOracle", "build_pseudo_paired",
    "ShapeWorldSpec", "decode_photo", "image_to_labels", "labels_to_image",
    "majority_filter", "make_procedural_domain", "render_photo", "sample_label_grid",
    "NATURAL_GLASSES", "SYNTHETIC_GLASSES", "FaceWorldSpec", "add_natural_overlay",
    "face_landmarks", "identity_of", "make_face_domain", "render_clean_face",
]

"""Eyeglass overlay synthesis: two filled ellipses joined by a bridge line.

Rasterization is a hard-edged membership test on pixel centers (no
anti-aliasing) so a scalar per-pixel reference can reproduce it exactly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ..errors import EllipseOutOfBounds, InvalidLandmarks
from ..validation import check_image


@dataclass(frozen=True)
class EyeglassParams:
    """Sampling ranges for the overlay geometry.

    Heights are in pixels; width and bridge width are multiples of the
    sampled height; transparency t blends out = (1 - t) * face + t * color.
    """

    height_range: tuple = (10.0, 25.0)
    width_factor_range: tuple = (0.5, 2.0)
    transparency_range: tuple = (0.1, 1.0)
    bridge_width_factor_range: tuple = (0.2, 0.5)
    color: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        for name in ("height_range", "width_factor_range",
                     "transparency_range", "bridge_width_factor_range"):
            lo, hi = getattr(self, name)
            if not lo <= hi:
                raise ValueError(f"{name} is empty: ({lo}, {hi})")
        t_lo, t_hi = self.transparency_range
        if not (0.0 < t_lo and t_hi <= 1.0):
            raise ValueError("transparency must lie in (0, 1]")
        if len(self.color) != 3 or not all(0.0 <= c <= 1.0 for c in self.color):
            raise ValueError("color must be an RGB triple in [0, 1]")


@dataclass(frozen=True)
class Landmarks:
    """Eye centers in (x, y) pixel coordinates, left strictly left of right."""

    left_eye: tuple
    right_eye: tuple

    def __post_init__(self):
        if self.left_eye[0] >= self.right_eye[0]:
            raise InvalidLandmarks(
                f"left eye x {self.left_eye[0]} must be < right eye x "
                f"{self.right_eye[0]}")

    def check_bounds(self, height, width):
        for name, (x, y) in (("left_eye", self.left_eye),
                             ("right_eye", self.right_eye)):
            if not (0 <= x < width and 0 <= y < height):
                raise InvalidLandmarks(
                    f"{name} {(x, y)} outside {width}x{height} image")


def sample_glasses_geometry(params: EyeglassParams, rng: np.random.Generator):
    """Draw (height, width, transparency, bridge_width); one width shared by
    both ellipses. The draw order is fixed and part of the contract."""
    h = rng.uniform(*params.height_range)
    w = h * rng.uniform(*params.width_factor_range)
    t = rng.uniform(*params.transparency_range)
    bw = h * rng.uniform(*params.bridge_width_factor_range)
    return h, w, t, bw


def ellipse_mask(shape, center, height, width):
    """Boolean mask of pixel centers inside the axis-aligned ellipse."""
    rows, cols = shape[:2]
    cx, cy = center
    ys = np.arange(rows, dtype=np.float64)[:, None]
    xs = np.arange(cols, dtype=np.float64)[None, :]
    return ((xs - cx) / (width / 2.0)) ** 2 + ((ys - cy) / (height / 2.0)) ** 2 <= 1.0


def segment_mask(shape, p1, p2, thickness):
    """Boolean mask of pixel centers within thickness/2 of the segment p1-p2."""
    rows, cols = shape[:2]
    ys = np.arange(rows, dtype=np.float64)[:, None]
    xs = np.arange(cols, dtype=np.float64)[None, :]
    px, py = p1
    qx, qy = p2
    dx, dy = qx - px, qy - py
    denom = dx * dx + dy * dy
    if denom == 0.0:
        dist2 = (xs - px) ** 2 + (ys - py) ** 2
    else:
        u = ((xs - px) * dx + (ys - py) * dy) / denom
        u = np.clip(u, 0.0, 1.0)
        dist2 = (xs - (px + u * dx)) ** 2 + (ys - (py + u * dy)) ** 2
    return dist2 <= (thickness / 2.0) ** 2


def glasses_mask(shape, lm: Landmarks, height, width, bridge_width):
    """Union of the two eye ellipses and the connecting bridge capsule.

    The bridge runs between the inner edge points of the ellipses at eye
    height; if the ellipses overlap horizontally there is no bridge.
    """
    left = ellipse_mask(shape, lm.left_eye, height, width)
    right = ellipse_mask(shape, lm.right_eye, height, width)
    mask = left | right
    inner_l = (lm.left_eye[0] + width / 2.0, lm.left_eye[1])
    inner_r = (lm.right_eye[0] - width / 2.0, lm.right_eye[1])
    if inner_l[0] < inner_r[0]:
        mask |= segment_mask(shape, inner_l, inner_r, bridge_width)
    return mask


def synthesize_eyeglasses(face, lm: Landmarks, params: EyeglassParams,
                          seed) -> np.ndarray:
    """Composite randomly sized eyeglasses onto a face image.

    Pixels outside the glasses mask are bit-identical to the input;
    inside, out = (1 - t) * face + t * color. Ellipses that would exceed
    the image are clipped with an EllipseOutOfBounds warning. Deterministic
    given ``seed`` (an int or a numpy Generator).
    """
    face = check_image(face, "face")
    rows, cols = face.shape[:2]
    lm.check_bounds(rows, cols)

    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    h, w, t, bw = sample_glasses_geometry(params, rng)

    for x, y in (lm.left_eye, lm.right_eye):
        if x - w / 2.0 < 0 or x + w / 2.0 > cols - 1 \
                or y - h / 2.0 < 0 or y + h / 2.0 > rows - 1:
            warnings.warn(
                f"ellipse at {(x, y)} (h={h:.1f}, w={w:.1f}) exceeds the "
                f"{cols}x{rows} image; clipping", EllipseOutOfBounds)

    mask = glasses_mask(face.shape, lm, h, w, bw)
    out = face.copy()
    color = np.asarray(params.color, dtype=np.float32)
    out[mask] = (1.0 - np.float32(t)) * face[mask] + np.float32(t) * color
    return out

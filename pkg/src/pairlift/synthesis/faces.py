"""Procedural face-like domain for the attribute (overlay removal) task.

Each identity has stable colors and geometry; samples add small brightness
and pixel noise. Domain A carries faces wearing "natural" glasses (near
opaque, dark), domain B the clean faces. The synthesis oracle M adds
"synthetic" glasses drawn from a visibly different parameter range
(translucent, lighter), so a pseudo-pair only approximates a real pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidSpec
from ..validation import quantize_to_byte_grid
from ..data.types import CorpusPair, PairedCorpus
from .glasses import EyeglassParams, Landmarks, synthesize_eyeglasses
from .oracle import TranslationOracle

NATURAL_GLASSES = EyeglassParams(
    height_range=(6.0, 9.0), width_factor_range=(1.0, 1.8),
    transparency_range=(0.85, 1.0), bridge_width_factor_range=(0.2, 0.45),
    color=(0.0, 0.0, 0.0))

SYNTHETIC_GLASSES = EyeglassParams(
    height_range=(5.0, 8.0), width_factor_range=(0.9, 1.6),
    transparency_range=(0.30, 0.55), bridge_width_factor_range=(0.2, 0.45),
    color=(0.10, 0.10, 0.16))


@dataclass(frozen=True)
class FaceWorldSpec:
    resolution: int = 32
    n_identities: int = 24
    identity_salt: int = 9021
    brightness_jitter: float = 0.05
    noise_sigma: float = 0.01
    natural_params: EyeglassParams = NATURAL_GLASSES
    synthetic_params: EyeglassParams = SYNTHETIC_GLASSES

    def __post_init__(self):
        if self.resolution < 16:
            raise InvalidSpec(f"resolution too small: {self.resolution}")
        if self.n_identities < 2:
            raise InvalidSpec("need >= 2 identities")


def face_landmarks(spec: FaceWorldSpec) -> Landmarks:
    res = spec.resolution
    y = int(round(0.44 * res))
    return Landmarks(left_eye=(int(round(0.36 * res)), y),
                     right_eye=(int(round(0.64 * res)), y))


def _identity_rng(spec: FaceWorldSpec, identity: int):
    return np.random.default_rng(
        np.random.SeedSequence([spec.identity_salt, identity]))


def identity_attributes(spec: FaceWorldSpec, identity: int) -> dict:
    """Stable per-identity colors and geometry (independent of corpus seed)."""
    rng = _identity_rng(spec, identity)
    return {
        "background": rng.uniform(0.55, 0.95, 3),
        "skin": np.array([rng.uniform(0.55, 0.9), rng.uniform(0.35, 0.65),
                          rng.uniform(0.25, 0.55)]),
        "hair": rng.uniform(0.0, 0.45, 3),
        "eye": rng.uniform(0.0, 0.35, 3),
        "mouth": np.array([rng.uniform(0.5, 0.9), rng.uniform(0.0, 0.25),
                           rng.uniform(0.0, 0.25)]),
        "face_rx": rng.uniform(0.30, 0.42),
        "face_ry": rng.uniform(0.36, 0.48),
        "hair_depth": rng.uniform(0.10, 0.22),
        "mouth_half_w": int(rng.integers(2, 6)),
    }


def render_clean_face(spec: FaceWorldSpec, identity: int,
                      rng: np.random.Generator) -> np.ndarray:
    """One clean (no overlay) sample of the identity, with nuisance noise."""
    res = spec.resolution
    attrs = identity_attributes(spec, identity)
    img = np.empty((res, res, 3), dtype=np.float64)
    img[:] = attrs["background"]

    ys = np.arange(res, dtype=np.float64)[:, None]
    xs = np.arange(res, dtype=np.float64)[None, :]
    cx, cy = res / 2.0, 0.55 * res
    rx, ry = attrs["face_rx"] * res, attrs["face_ry"] * res
    face = ((xs - cx) / rx) ** 2 + ((ys - cy) / ry) ** 2 <= 1.0
    img[face] = attrs["skin"]

    hair = face & (ys < (cy - ry) + attrs["hair_depth"] * res + ry * 0.35)
    img[hair] = attrs["hair"]

    lm = face_landmarks(spec)
    for ex, ey in (lm.left_eye, lm.right_eye):
        eye = (xs - ex) ** 2 + (ys - ey) ** 2 <= (0.045 * res) ** 2
        img[eye] = attrs["eye"]

    my = int(round(0.72 * res))
    half = attrs["mouth_half_w"]
    img[my:my + max(1, res // 16), res // 2 - half:res // 2 + half] = attrs["mouth"]

    img *= 1.0 + rng.uniform(-spec.brightness_jitter, spec.brightness_jitter)
    img += rng.normal(0.0, spec.noise_sigma, size=img.shape)
    return quantize_to_byte_grid(np.clip(img, 0.0, 1.0))


def add_natural_overlay(spec: FaceWorldSpec, clean, rng) -> np.ndarray:
    return quantize_to_byte_grid(
        synthesize_eyeglasses(clean, face_landmarks(spec), spec.natural_params, rng))


def make_face_domain(spec: FaceWorldSpec, n: int, seed: int):
    """Emit n (overlaid face, clean face) pairs plus the synthesis oracle.

    Identities cycle through the spec's pool, so corpora built with
    different seeds share identities but not samples. Pair ids embed the
    identity as ``face-<identity>-<index>``.
    """
    if n < 1:
        raise InvalidSpec("need n >= 1 pairs")
    children = np.random.SeedSequence([seed, spec.resolution]).spawn(n)
    pairs = []
    for i in range(n):
        rng = np.random.default_rng(children[i])
        identity = i % spec.n_identities
        clean = render_clean_face(spec, identity, rng)
        overlaid = add_natural_overlay(spec, clean, rng)
        pairs.append(CorpusPair(f"face-{identity:03d}-{i:05d}", overlaid, clean))
    corpus = PairedCorpus(pairs, name=f"faces-i{spec.n_identities}-s{seed}")

    lm = face_landmarks(spec)

    def inverse(image, rng):
        return quantize_to_byte_grid(
            synthesize_eyeglasses(image, lm, spec.synthetic_params, rng))

    oracle = TranslationOracle(
        forward=None, inverse_approx=inverse,
        descriptor="synthetic eyeglass overlay (translucent variant)")
    return corpus, oracle


def identity_of(pair_id: str) -> int:
    """Recover the identity index from a face pair id."""
    return int(pair_id.split("-")[1])

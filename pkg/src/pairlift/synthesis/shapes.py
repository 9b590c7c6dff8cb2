"""Procedural label <-> photo domain with an analytically known translation.

Domain A holds flat-color label maps, domain B their rendered "photos"
(per-class base color, stripe texture, pixel noise). The rendering T is a
pure function of the label map: the noise field is seeded from a hash of
the map, so re-rendering any label map reproduces its photo bit-exactly.
The approximate inverse M classifies pixels by nearest class appearance and
applies a 3x3 majority cleanup; texture and noise make it imperfect by
construction.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidSpec
from ..validation import quantize_to_byte_grid
from ..data.types import CorpusPair, PairedCorpus
from .oracle import TranslationOracle

_LABEL_PALETTE_U8 = (
    (40, 40, 40), (200, 30, 30), (30, 180, 40), (30, 60, 220), (230, 200, 40),
    (200, 40, 200), (40, 200, 200), (240, 240, 240),
)
_PHOTO_PALETTE_U8 = (
    (70, 80, 110), (180, 120, 90), (90, 160, 90), (150, 150, 160), (210, 180, 130),
    (150, 90, 150), (90, 150, 150), (200, 200, 190),
)
# Stripe direction/wavelength per class, in pixels.
_TEXTURE_WAVES = ((1, 1, 7.0), (1, 0, 5.0), (0, 1, 5.0), (1, -1, 7.0), (2, 1, 9.0),
                  (1, 2, 9.0), (1, 0, 3.0), (0, 1, 3.0))


def _palette(u8_colors):
    return np.array(u8_colors, dtype=np.float32) / np.float32(255.0)


@dataclass(frozen=True)
class ShapeWorldSpec:
    """Declarative config of the procedural domain."""

    n_classes: int = 4
    resolution: int = 32
    shapes_per_image: tuple = (2, 4)
    shape_size: tuple = (3, 10)
    texture_amplitude: float = 0.10
    noise_sigma: float = 0.10
    label_colors: tuple = None
    photo_colors: tuple = None

    def __post_init__(self):
        if self.n_classes < 2:
            raise InvalidSpec(f"need >= 2 classes, got {self.n_classes}")
        if self.resolution < 8:
            raise InvalidSpec(f"resolution too small: {self.resolution}")
        if self.label_colors is None:
            if self.n_classes > len(_LABEL_PALETTE_U8):
                raise InvalidSpec(
                    f"default palette covers {len(_LABEL_PALETTE_U8)} classes; "
                    f"pass label_colors for {self.n_classes}")
            object.__setattr__(self, "label_colors",
                               tuple(map(tuple, _palette(_LABEL_PALETTE_U8[:self.n_classes]))))
        if self.photo_colors is None:
            object.__setattr__(self, "photo_colors",
                               tuple(map(tuple, _palette(_PHOTO_PALETTE_U8[:self.n_classes]))))
        for name in ("label_colors", "photo_colors"):
            colors = getattr(self, name)
            if len(colors) != self.n_classes:
                raise InvalidSpec(f"{name} must list {self.n_classes} colors")
            if len({tuple(c) for c in colors}) != self.n_classes:
                raise InvalidSpec(f"{name} colors must be pairwise distinct")
        if self.texture_amplitude < 0 or self.noise_sigma < 0:
            raise InvalidSpec("texture_amplitude and noise_sigma must be >= 0")

    @property
    def label_palette(self):
        return np.array(self.label_colors, dtype=np.float32)

    @property
    def photo_palette(self):
        return np.array(self.photo_colors, dtype=np.float32)


def sample_label_grid(spec: ShapeWorldSpec, rng: np.random.Generator):
    """Random layout: background class 0 plus a few rectangles/ellipses."""
    res = spec.resolution
    grid = np.zeros((res, res), dtype=np.int64)
    n_shapes = rng.integers(spec.shapes_per_image[0], spec.shapes_per_image[1] + 1)
    lo, hi = spec.shape_size
    for _ in range(n_shapes):
        cls = int(rng.integers(1, spec.n_classes))
        cy, cx = rng.uniform(0, res, size=2)
        ry, rx = rng.uniform(lo, hi, size=2)
        ys = np.arange(res)[:, None]
        xs = np.arange(res)[None, :]
        if rng.random() < 0.5:
            inside = (np.abs(ys - cy) <= ry) & (np.abs(xs - cx) <= rx)
        else:
            inside = ((ys - cy) / ry) ** 2 + ((xs - cx) / rx) ** 2 <= 1.0
        grid[inside] = cls
    return grid


def labels_to_image(grid, palette):
    return palette[np.asarray(grid)]


def image_to_labels(label_image, palette):
    """Nearest palette color per pixel (ties to the lowest class id)."""
    img = np.asarray(label_image, dtype=np.float32)
    dists = np.mean(np.abs(img[None, ...] - palette[:, None, None, :]), axis=-1)
    return np.argmin(dists, axis=0).astype(np.int64)


def _noise_rng_for(label_grid):
    digest = hashlib.sha256(np.ascontiguousarray(label_grid, dtype=np.int64).tobytes())
    words = np.frombuffer(digest.digest()[:16], dtype=np.uint32)
    return np.random.default_rng(np.random.SeedSequence(words.tolist()))


def render_photo(label_grid, spec: ShapeWorldSpec):
    """The forward translation T: deterministic photo for a label map."""
    grid = np.asarray(label_grid, dtype=np.int64)
    res = spec.resolution
    photo = spec.photo_palette[grid].astype(np.float64)
    ys = np.arange(res, dtype=np.float64)[:, None]
    xs = np.arange(res, dtype=np.float64)[None, :]
    for cls in range(spec.n_classes):
        fy, fx, wavelength = _TEXTURE_WAVES[cls % len(_TEXTURE_WAVES)]
        wave = spec.texture_amplitude * np.sin(
            2.0 * np.pi * (fy * ys + fx * xs) / wavelength)
        photo[grid == cls] += wave[grid == cls][:, None]
    noise = _noise_rng_for(grid).normal(0.0, spec.noise_sigma, size=photo.shape)
    return quantize_to_byte_grid(np.clip(photo + noise, 0.0, 1.0))


def majority_filter(grid, n_classes):
    """3x3 mode filter over a class grid (ties to the lowest class id)."""
    grid = np.asarray(grid)
    padded = np.pad(grid, 1, mode="edge")
    counts = np.zeros((n_classes,) + grid.shape, dtype=np.int16)
    rows, cols = grid.shape
    for dy in range(3):
        for dx in range(3):
            window = padded[dy:dy + rows, dx:dx + cols]
            for cls in range(n_classes):
                counts[cls] += window == cls
    return np.argmax(counts, axis=0).astype(np.int64)


def decode_photo(photo, spec: ShapeWorldSpec):
    """The approximate inverse M: nearest class appearance + majority cleanup."""
    raw = image_to_labels(photo, spec.photo_palette)
    return majority_filter(raw, spec.n_classes)


def make_procedural_domain(spec: ShapeWorldSpec, n: int, seed: int):
    """Emit n (label map, rendered photo) pairs plus the translation oracle.

    Domain A carries the label images, domain B the photos; pair ids are
    stable across rebuilds with the same arguments.
    """
    if n < 1:
        raise InvalidSpec("need n >= 1 pairs")
    rng = np.random.default_rng(np.random.SeedSequence([seed, spec.resolution]))
    palette = spec.label_palette
    pairs = []
    for i in range(n):
        grid = sample_label_grid(spec, rng)
        label_image = quantize_to_byte_grid(labels_to_image(grid, palette))
        photo = render_photo(grid, spec)
        pairs.append(CorpusPair(f"shape-{i:05d}", label_image, photo))
    corpus = PairedCorpus(pairs, name=f"shapes-k{spec.n_classes}-r{spec.resolution}-s{seed}")

    def forward(label_image, rng=None):
        return render_photo(image_to_labels(label_image, palette), spec)

    def inverse(photo, rng=None):
        return quantize_to_byte_grid(
            labels_to_image(decode_photo(photo, spec), palette))

    oracle = TranslationOracle(
        forward=forward, inverse_approx=inverse,
        descriptor=f"shape-world render/decode (K={spec.n_classes})")
    return corpus, oracle

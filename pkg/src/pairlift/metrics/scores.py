"""Reconstruction and segmentation-style translation quality scores."""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Optional

import numpy as np

from ..errors import ClassOutOfRange, ShapeMismatch
from ..validation import check_aligned, check_image, check_label_grid


@dataclass(frozen=True)
class LabelTable:
    """class_id -> RGB color mapping used to decode photo-like outputs."""

    entries: tuple  # ((class_id, (r, g, b)), ...)

    def __init__(self, entries):
        entries = tuple((int(c), tuple(float(v) for v in color))
                        for c, color in entries)
        if len(entries) < 2:
            raise ValueError("label table needs >= 2 classes")
        ids = [c for c, _ in entries]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate class ids in label table")
        colors = [color for _, color in entries]
        if len({tuple(np.round(np.asarray(c), 9)) for c in colors}) != len(colors):
            raise ValueError("label table colors must be pairwise distinct")
        object.__setattr__(self, "entries", tuple(sorted(entries)))

    @classmethod
    def from_palette(cls, palette):
        return cls([(i, tuple(color)) for i, color in enumerate(np.asarray(palette))])

    @property
    def class_ids(self):
        return np.array([c for c, _ in self.entries], dtype=np.int64)

    @property
    def colors(self):
        return np.array([color for _, color in self.entries], dtype=np.float32)


@dataclass
class MetricReport:
    """Per-experiment evaluation results; fields not measured stay None."""

    mse: Optional[float] = None
    per_pixel_acc: Optional[float] = None
    per_class_acc: Optional[float] = None
    class_iou: Optional[float] = None
    infosim: Optional[float] = None
    n_samples: int = 0

    def __post_init__(self):
        for name in ("per_pixel_acc", "per_class_acc", "class_iou"):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} outside [0, 1]")
        for name in ("mse", "infosim"):
            value = getattr(self, name)
            if value is not None and value < 0.0:
                raise ValueError(f"{name}={value} must be >= 0")

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**{k: d.get(k) for k in
                      ("mse", "per_pixel_acc", "per_class_acc", "class_iou",
                       "infosim", "n_samples")})


def mse(generated, targets) -> float:
    """Mean over samples of per-pixel squared error, channels averaged.

    Targets are the true paired counterparts from a fully paired test split.
    """
    gen, tgt = check_aligned(generated, targets, "generated", "targets")
    return float(np.mean((gen.astype(np.float64) - tgt.astype(np.float64)) ** 2))


def decode_labels(photo_like, table: LabelTable):
    """Assign each pixel the class whose table color is nearest in mean
    absolute channel distance; ties go to the lowest class id."""
    img = check_image(photo_like, "photo_like")
    colors = table.colors
    dists = np.mean(np.abs(img[None, ...] - colors[:, None, None, :]), axis=-1)
    return table.class_ids[np.argmin(dists, axis=0)]


def confusion_matrix(predicted, truth, n_classes):
    pred = check_label_grid(predicted, n_classes, "predicted")
    true = check_label_grid(truth, n_classes, "truth")
    if pred.shape != true.shape:
        raise ShapeMismatch(f"label grids differ: {pred.shape} vs {true.shape}")
    flat = n_classes * true.ravel() + pred.ravel()
    return np.bincount(flat, minlength=n_classes * n_classes) \
        .reshape(n_classes, n_classes)


def fcn_scores(predicted_labels, true_labels, n_classes):
    """(per-pixel acc, per-class acc, class IOU) over a list of label grids.

    Per-class accuracy averages recall over classes present in the truth;
    IOU averages over classes present in either truth or prediction (a
    hallucinated class therefore drags IOU down but not per-class accuracy).
    """
    predicted_labels = list(predicted_labels)
    true_labels = list(true_labels)
    if len(predicted_labels) != len(true_labels):
        raise ShapeMismatch(
            f"{len(predicted_labels)} predictions vs {len(true_labels)} truths")
    if not predicted_labels:
        raise ValueError("empty label lists")
    conf = np.zeros((n_classes, n_classes), dtype=np.int64)
    for pred, true in zip(predicted_labels, true_labels):
        conf += confusion_matrix(pred, true, n_classes)

    total = conf.sum()
    per_pixel = conf.trace() / total
    truth_count = conf.sum(axis=1)
    pred_count = conf.sum(axis=0)
    diag = np.diag(conf)

    in_truth = truth_count > 0
    per_class = float(np.mean(diag[in_truth] / truth_count[in_truth]))

    in_either = (truth_count + pred_count) > 0
    union = truth_count + pred_count - diag
    iou = float(np.mean(diag[in_either] / union[in_either]))
    return float(per_pixel), per_class, iou

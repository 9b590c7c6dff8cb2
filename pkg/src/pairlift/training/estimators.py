"""Estimator-style wrappers around the training loops.

``CycleGanTranslator`` learns from two unpaired image sets; ``transform``
maps A -> B and ``inverse_transform`` B -> A. ``PairedTranslator`` learns
from aligned pairs and only maps forward. Both follow the sklearn
get_params/set_params convention so they compose with model-selection
tooling.
"""

from __future__ import annotations

import numpy as np
import torch
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from ..models.networks import build_cyclegan_networks, build_pix2pix_networks
from ..validation import check_image_stack
from .config import TrainConfig
from .loops import DomainView, apply_generator, train_supervised, train_unsupervised
from ..data.types import (
    DOMAIN_A,
    DOMAIN_B,
    AlphaPairedDataset,
    ManifestEntry,
    PairingManifest,
    Sample,
)


class CycleGanTranslator(BaseEstimator):
    """Unsupervised dual-GAN translator between two image domains.

    The fit step never receives pairing information: inputs are reduced to
    bare per-domain image stacks before the loop sees them.
    """

    def __init__(self, scale=0.25, n_resblocks=3, epochs=200, batch_size=25,
                 lr_g=2e-4, lr_d=2e-4, cycle_weight=10.0, identity_weight=0.0,
                 adversarial_loss="least_squares", seed=0):
        self.scale = scale
        self.n_resblocks = n_resblocks
        self.epochs = epochs
        self.batch_size = batch_size
        self.lr_g = lr_g
        self.lr_d = lr_d
        self.cycle_weight = cycle_weight
        self.identity_weight = identity_weight
        self.adversarial_loss = adversarial_loss
        self.seed = seed

    def _config(self):
        return TrainConfig(
            epochs=self.epochs, batch_size=self.batch_size, lr_g=self.lr_g,
            lr_d=self.lr_d, cycle_weight=self.cycle_weight,
            identity_weight=self.identity_weight,
            adversarial_loss=self.adversarial_loss, seed=self.seed)

    def fit(self, X, y):
        """Train on domain-A images ``X`` and domain-B images ``y`` (unpaired)."""
        view = DomainView(X, y)
        torch.manual_seed(self.seed)
        nets = build_cyclegan_networks(self.scale, self.n_resblocks)
        self.checkpoint_, self.train_log_ = train_unsupervised(
            view, nets, self._config())
        self.nets_ = nets
        return self

    def transform(self, X):
        self._check_fitted()
        return apply_generator(self.nets_[0], X)

    def inverse_transform(self, X):
        self._check_fitted()
        return apply_generator(self.nets_[1], X)

    def _check_fitted(self):
        if not hasattr(self, "nets_"):
            raise NotFittedError("CycleGanTranslator is not fitted")


class PairedTranslator(BaseEstimator):
    """Supervised conditional-GAN translator trained on aligned pairs."""

    def __init__(self, scale=0.25, resolution=32, epochs=200, batch_size=25,
                 lr_g=2e-4, lr_d=2e-4, l1_weight=100.0,
                 adversarial_loss="least_squares", seed=0):
        self.scale = scale
        self.resolution = resolution
        self.epochs = epochs
        self.batch_size = batch_size
        self.lr_g = lr_g
        self.lr_d = lr_d
        self.l1_weight = l1_weight
        self.adversarial_loss = adversarial_loss
        self.seed = seed

    def _config(self):
        return TrainConfig(
            epochs=self.epochs, batch_size=self.batch_size, lr_g=self.lr_g,
            lr_d=self.lr_d, l1_weight=self.l1_weight,
            adversarial_loss=self.adversarial_loss, seed=self.seed)

    def fit(self, X, y):
        """Train on inputs ``X`` aligned index-by-index with targets ``y``."""
        xs = check_image_stack(X, "X")
        ys = check_image_stack(y, "y")
        if xs.shape != ys.shape:
            raise ValueError(f"X {xs.shape} and y {ys.shape} must align")
        dataset = fully_paired_dataset(xs, ys)
        torch.manual_seed(self.seed)
        nets = build_pix2pix_networks(self.scale, self.resolution)
        self.checkpoint_, self.train_log_ = train_supervised(
            dataset, nets, self._config())
        self.nets_ = nets
        return self

    def transform(self, X):
        if not hasattr(self, "nets_"):
            raise NotFittedError("PairedTranslator is not fitted")
        return apply_generator(self.nets_[0], X)

    predict = transform


def fully_paired_dataset(xs, ys, prefix="pair") -> AlphaPairedDataset:
    """Wrap aligned arrays as an alpha = 1 dataset."""
    set_a, set_b, entries = [], [], []
    for i, (a, b) in enumerate(zip(xs, ys)):
        pid = f"{prefix}-{i:05d}"
        set_a.append(Sample(a, DOMAIN_A, pair_id=pid))
        set_b.append(Sample(b, DOMAIN_B, pair_id=pid))
        entries.append(ManifestEntry(pid, a=f"{pid}_a.png", b=f"{pid}_b.png",
                                     origin_a="real", origin_b="real"))
    manifest = PairingManifest(entries=entries, alpha_declared=1.0, source=prefix)
    return AlphaPairedDataset(set_a=set_a, set_b=set_b, manifest=manifest)

"""Representation-space similarity: small trained embedders and InfoSIM."""

from __future__ import annotations

import numpy as np
import torch
import torch.nn as nn
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from ..errors import ShapeMismatch
from ..validation import check_image_stack

torch.set_flush_denormal(True)


class _EmbedderNet(nn.Module):
    def __init__(self, in_channels, embed_dim, n_classes):
        super().__init__()
        self.features = nn.Sequential(
            nn.Conv2d(in_channels, 16, 3, 2, 1), nn.ReLU(inplace=True),
            nn.Conv2d(16, 32, 3, 2, 1), nn.ReLU(inplace=True),
            nn.Conv2d(32, 64, 3, 2, 1), nn.ReLU(inplace=True),
            nn.AdaptiveAvgPool2d(1), nn.Flatten(),
        )
        self.embed = nn.Linear(64, embed_dim)
        self.head = nn.Linear(embed_dim, n_classes)

    def forward(self, x):
        return self.head(torch.relu(self.embed(self.features(x))))

    def representation(self, x):
        return self.embed(self.features(x))


class ImageEmbedder(BaseEstimator):
    """Small CNN classifier whose penultimate layer serves as representation.

    Fit it on a hold-out split (disjoint from any translation train/test
    data) to distinguish the attribute of interest; ``transform`` then maps
    images to the representation space.
    """

    def __init__(self, embed_dim=32, epochs=30, batch_size=64, lr=1e-3,
                 seed=0, representation_layer="embed"):
        self.embed_dim = embed_dim
        self.epochs = epochs
        self.batch_size = batch_size
        self.lr = lr
        self.seed = seed
        self.representation_layer = representation_layer

    def fit(self, X, y):
        X = check_image_stack(X, "X")
        y = np.asarray(y, dtype=np.int64)
        if len(y) != len(X):
            raise ShapeMismatch(f"{len(X)} images vs {len(y)} labels")
        classes = np.unique(y)
        self.classes_ = classes
        index_of = {c: i for i, c in enumerate(classes)}
        targets = torch.tensor([index_of[c] for c in y])

        torch.manual_seed(self.seed)
        net = _EmbedderNet(X.shape[3], self.embed_dim, len(classes))
        opt = torch.optim.Adam(net.parameters(), lr=self.lr)
        loss_fn = nn.CrossEntropyLoss()
        data = torch.from_numpy(X).permute(0, 3, 1, 2).contiguous()
        rng = np.random.default_rng(self.seed)
        net.train()
        for _ in range(self.epochs):
            order = rng.permutation(len(data))
            for start in range(0, len(data), self.batch_size):
                idx = order[start:start + self.batch_size]
                opt.zero_grad()
                out = net(data[idx])
                loss = loss_fn(out, targets[idx])
                loss.backward()
                opt.step()
        net.eval()
        self.net_ = net
        return self

    def transform(self, X):
        if not hasattr(self, "net_"):
            raise NotFittedError("ImageEmbedder is not fitted")
        X = check_image_stack(X, "X")
        data = torch.from_numpy(X).permute(0, 3, 1, 2).contiguous()
        with torch.no_grad():
            reps = self.net_.representation(data)
        return reps.numpy()

    def predict(self, X):
        if not hasattr(self, "net_"):
            raise NotFittedError("ImageEmbedder is not fitted")
        X = check_image_stack(X, "X")
        data = torch.from_numpy(X).permute(0, 3, 1, 2).contiguous()
        with torch.no_grad():
            logits = self.net_(data)
        return self.classes_[logits.argmax(dim=1).numpy()]

    def score(self, X, y):
        return float(np.mean(self.predict(X) == np.asarray(y)))


class LinearProjectionEmbedder(BaseEstimator):
    """Fixed linear projection of flattened images; handy as a test oracle."""

    def __init__(self, matrix=None):
        self.matrix = matrix

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        X = check_image_stack(X, "X")
        flat = X.reshape(len(X), -1).astype(np.float64)
        if self.matrix is None:
            return flat
        return flat @ np.asarray(self.matrix, dtype=np.float64)


def infosim(embedder, inputs, outputs) -> float:
    """Mean squared distance between representations of inputs and their
    translated outputs; low values mean the translation preserved the
    information the embedder encodes."""
    inputs = check_image_stack(inputs, "inputs")
    outputs = check_image_stack(outputs, "outputs")
    if inputs.shape != outputs.shape:
        raise ShapeMismatch(
            f"inputs {inputs.shape} vs outputs {outputs.shape}")
    rep_in = np.asarray(embedder.transform(inputs), dtype=np.float64)
    rep_out = np.asarray(embedder.transform(outputs), dtype=np.float64)
    return float(np.mean((rep_in - rep_out) ** 2))

"""Principal-plane projection of representation groups with ellipse fits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.decomposition import PCA

from ..errors import DegenerateCovariance
from ..validation import check_image_stack


@dataclass(frozen=True)
class EllipseFit:
    """2-sigma covariance ellipse of a projected group."""

    center: tuple
    semi_axes: tuple   # major, minor
    angle: float       # radians, major axis vs first principal direction

    @property
    def major(self):
        return self.semi_axes[0]


@dataclass
class DistributionAnalysis:
    projections: dict      # group name -> (n, out_dim) coordinates
    ellipses: dict         # group name -> EllipseFit
    components: np.ndarray
    mean: np.ndarray
    explained_variance: np.ndarray

    def centroid(self, name):
        return self.projections[name].mean(axis=0)

    def centroid_distance(self, name_a, name_b):
        return float(np.linalg.norm(self.centroid(name_a) - self.centroid(name_b)))


def fit_ellipse(points, n_sigma=2.0) -> EllipseFit:
    points = np.asarray(points, dtype=np.float64)
    if len(points) < 3:
        raise DegenerateCovariance(
            f"need >= 3 points for a covariance ellipse, got {len(points)}")
    center = points.mean(axis=0)
    cov = np.cov(points.T)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1]
    eigvals = np.clip(eigvals[order], 0.0, None)
    major_vec = eigvecs[:, order[0]]
    return EllipseFit(
        center=tuple(center),
        semi_axes=tuple(n_sigma * np.sqrt(eigvals)),
        angle=float(np.arctan2(major_vec[1], major_vec[0])))


def distribution_analysis(embedder, sample_groups: dict, out_dim=2) -> DistributionAnalysis:
    """Project every group's representations into the shared principal plane.

    The projection is fit on the union of all groups, so distances between
    group centroids are comparable; each group then gets a 2-sigma
    covariance ellipse for plotting.
    """
    if len(sample_groups) < 2:
        raise ValueError("need >= 2 sample groups")
    reps = {}
    for name, images in sample_groups.items():
        stack = check_image_stack(images, f"group {name!r}")
        reps[name] = np.asarray(embedder.transform(stack), dtype=np.float64)

    union = np.concatenate(list(reps.values()), axis=0)
    pca = PCA(n_components=out_dim, svd_solver="full")
    pca.fit(union)

    projections = {name: pca.transform(r) for name, r in reps.items()}
    ellipses = {name: fit_ellipse(p) for name, p in projections.items()}
    return DistributionAnalysis(
        projections=projections,
        ellipses=ellipses,
        components=pca.components_.copy(),
        mean=pca.mean_.copy(),
        explained_variance=pca.explained_variance_.copy())

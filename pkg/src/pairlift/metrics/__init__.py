from .scores import LabelTable, MetricReport, confusion_matrix, decode_labels, fcn_scores, mse
from .embedder import ImageEmbedder, LinearProjectionEmbedder, infosim
from .analysis import DistributionAnalysis, EllipseFit, distribution_analysis, fit_ellipse

__all__ = [
    "LabelTable", "MetricReport", "confusion_matrix", "decode_labels",
    "fcn_scores", "mse",
    "ImageEmbedder", "LinearProjectionEmbedder", "infosim",
    "DistributionAnalysis", "EllipseFit", "distribution_analysis", "fit_ellipse",
]

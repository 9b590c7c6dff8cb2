from .types import (
    DOMAIN_A,
    DOMAIN_B,
    ORIGIN_PSEUDO,
    ORIGIN_REAL,
    AlphaPairedDataset,
    CorpusPair,
    ManifestEntry,
    PairedCorpus,
    PairingManifest,
    Sample,
)
from .builder import build_alpha_paired, exact_pair_count, split_corpus, temporal_subsample
from .io import load_dataset, save_dataset

__all__ = [
    "DOMAIN_A", "DOMAIN_B", "ORIGIN_PSEUDO", "ORIGIN_REAL",
    "AlphaPairedDataset", "CorpusPair", "ManifestEntry", "PairedCorpus",
    "PairingManifest", "Sample",
    "build_alpha_paired", "exact_pair_count", "split_corpus", "temporal_subsample",
    "load_dataset", "save_dataset",
]

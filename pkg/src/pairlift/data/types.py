"""Core sample and dataset types for balanced two-domain image sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..validation import check_image

DOMAIN_A = "A"
DOMAIN_B = "B"
ORIGIN_REAL = "real"
ORIGIN_PSEUDO = "pseudo"


@dataclass(frozen=True)
class Sample:
    """One image with its domain tag, origin flag and optional pair link.

    ``pair_id`` ties a sample to its counterpart in the other domain; it is
    the source corpus pair key, never a positional index, so it survives
    shuffling and re-splits.
    """

    image: np.ndarray
    domain: str
    origin: str = ORIGIN_REAL
    pair_id: Optional[str] = None
    source_ref: str = ""

    def __post_init__(self):
        object.__setattr__(self, "image", check_image(self.image, "Sample.image"))
        if self.domain not in (DOMAIN_A, DOMAIN_B):
            raise ValueError(f"domain must be 'A' or 'B', got {self.domain!r}")
        if self.origin not in (ORIGIN_REAL, ORIGIN_PSEUDO):
            raise ValueError(f"origin must be 'real' or 'pseudo', got {self.origin!r}")


@dataclass(frozen=True)
class ManifestEntry:
    """One pair slot: a side, a b side, or both (a genuine cross-domain pair)."""

    pair_id: str
    a: Optional[str] = None  # filename in A/, or None when absent
    b: Optional[str] = None
    origin_a: Optional[str] = None
    origin_b: Optional[str] = None

    def __post_init__(self):
        if self.a is None and self.b is None:
            raise ValueError(f"entry {self.pair_id!r} has neither side")


@dataclass
class PairingManifest:
    """Declares which samples of a dataset form cross-domain pairs."""

    entries: list[ManifestEntry]
    alpha_declared: float
    seed: Optional[int] = None
    source: str = ""

    def __post_init__(self):
        self.validate()

    def validate(self):
        ids = [e.pair_id for e in self.entries]
        if len(ids) != len(set(ids)):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate pair_id in manifest: {dupes[:5]}")
        if not 0.0 <= self.alpha_declared <= 1.0:
            raise ValueError(f"alpha_declared {self.alpha_declared} outside [0, 1]")
        n_a = sum(1 for e in self.entries if e.a is not None)
        n_paired = sum(1 for e in self.entries if e.a is not None and e.b is not None)
        if n_a == 0:
            if self.alpha_declared != 0.0 and n_paired:
                raise ValueError("manifest has no A entries but declares alpha > 0")
            return
        realized = n_paired / n_a
        if realized != self.alpha_declared:
            raise ValueError(
                f"alpha_declared {self.alpha_declared} != realized {realized} "
                f"({n_paired} paired / {n_a} A entries)")

    @property
    def paired_ids(self) -> set[str]:
        return {e.pair_id for e in self.entries if e.a is not None and e.b is not None}


@dataclass
class AlphaPairedDataset:
    """Two balanced sample sets plus the manifest binding them.

    Invariants (checked on construction):
      * |set_A| == |set_B|
      * realized pairing ratio (shared pair_ids / |set_A|) equals the
        declared alpha exactly
      * any pair_id occurs at most once per domain
    """

    set_a: list[Sample]
    set_b: list[Sample]
    manifest: PairingManifest

    def __post_init__(self):
        self.validate()

    def validate(self):
        if len(self.set_a) != len(self.set_b):
            raise ValueError(
                f"unbalanced dataset: |A|={len(self.set_a)} |B|={len(self.set_b)}")
        for sample in self.set_a:
            if sample.domain != DOMAIN_A:
                raise ValueError("set_a contains a non-A sample")
        for sample in self.set_b:
            if sample.domain != DOMAIN_B:
                raise ValueError("set_b contains a non-B sample")
        ids_a = [s.pair_id for s in self.set_a if s.pair_id is not None]
        ids_b = [s.pair_id for s in self.set_b if s.pair_id is not None]
        if len(ids_a) != len(set(ids_a)) or len(ids_b) != len(set(ids_b)):
            raise ValueError("a pair_id occurs twice within one domain")
        shared = set(ids_a) & set(ids_b)
        n = len(self.set_a)
        realized = len(shared) / n if n else 0.0
        if realized != self.manifest.alpha_declared:
            raise ValueError(
                f"realized alpha {realized} != declared {self.manifest.alpha_declared}")
        if self.manifest.paired_ids != shared:
            raise ValueError("manifest paired ids disagree with sample pair ids")

    def __len__(self):
        return len(self.set_a)

    @property
    def alpha(self) -> float:
        return self.manifest.alpha_declared

    def images_a(self) -> np.ndarray:
        return np.stack([s.image for s in self.set_a]) if self.set_a else np.zeros((0,))

    def images_b(self) -> np.ndarray:
        return np.stack([s.image for s in self.set_b]) if self.set_b else np.zeros((0,))


@dataclass(frozen=True)
class CorpusPair:
    """A ground-truth pair (a, b = T(a)) from a fully paired source corpus."""

    pair_id: str
    image_a: np.ndarray
    image_b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "image_a", check_image(self.image_a, "image_a"))
        object.__setattr__(self, "image_b", check_image(self.image_b, "image_b"))


@dataclass
class PairedCorpus:
    """A fully paired source corpus from which alpha-paired sets are drawn."""

    pairs: list[CorpusPair]
    name: str = "corpus"

    def __post_init__(self):
        ids = [p.pair_id for p in self.pairs]
        if len(ids) != len(set(ids)):
            raise ValueError("corpus contains duplicate pair ids")

    def __len__(self):
        return len(self.pairs)

    def subset(self, pair_ids, name=None) -> "PairedCorpus":
        wanted = set(pair_ids)
        return PairedCorpus(
            pairs=[p for p in self.pairs if p.pair_id in wanted],
            name=name or self.name)

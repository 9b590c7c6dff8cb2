"""Construction of balanced alpha-paired datasets from a fully paired corpus."""

from __future__ import annotations

import numpy as np

from ..errors import InsufficientSource, NonIntegralPairCount
from .types import (
    DOMAIN_A,
    DOMAIN_B,
    AlphaPairedDataset,
    ManifestEntry,
    PairedCorpus,
    PairingManifest,
    Sample,
)


def exact_pair_count(alpha, n_per_domain):
    """Number of cross-domain pairs implied by alpha; must be integral."""
    raw = alpha * n_per_domain
    n_paired = int(round(raw))
    if abs(raw - n_paired) > 1e-9:
        raise NonIntegralPairCount(
            f"alpha * n = {alpha} * {n_per_domain} = {raw} is not an integer")
    return n_paired


def build_alpha_paired(source: PairedCorpus, alpha: float, n_per_domain: int,
                       seed: int, strict_unpaired: bool = True) -> AlphaPairedDataset:
    """Draw a balanced dataset with exactly ``alpha * n`` cross-domain pairs.

    The paired portion keeps both sides of a source pair. Unpaired A samples
    and unpaired B samples come from disjoint source pairs, so an unpaired
    sample's true counterpart is never present in the other domain. Sampling
    is uniform without replacement and deterministic given ``seed``.

    ``strict_unpaired=False`` relaxes the counterpart exclusion: the two
    unpaired halves are drawn independently, a draw may therefore reunite a
    source pair by accident, and any such coincidence is recorded as a pair
    in the manifest (the declared alpha then reflects the realized ratio,
    which can exceed the requested one).
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    if n_per_domain < 1:
        raise ValueError("n_per_domain must be >= 1")
    n_paired = exact_pair_count(alpha, n_per_domain)
    n_unpaired = n_per_domain - n_paired

    needed = n_paired + (2 * n_unpaired if strict_unpaired else n_unpaired)
    if len(source) < needed:
        raise InsufficientSource(
            f"corpus has {len(source)} pairs; need {needed} "
            f"(alpha={alpha}, n={n_per_domain}, strict={strict_unpaired})")

    rng = np.random.default_rng(seed)
    order = rng.permutation(len(source.pairs))
    paired_idx = order[:n_paired]
    a_only_idx = order[n_paired:n_paired + n_unpaired]
    if strict_unpaired:
        b_only_idx = order[n_paired + n_unpaired:n_paired + 2 * n_unpaired]
    else:
        pool = order[n_paired:]
        b_only_idx = rng.choice(pool, size=n_unpaired, replace=False)

    set_a, set_b, entries = [], [], []
    accidental = set(a_only_idx) & set(b_only_idx)
    for i in paired_idx:
        p = source.pairs[i]
        set_a.append(Sample(p.image_a, DOMAIN_A, pair_id=p.pair_id,
                            source_ref=f"{source.name}/{p.pair_id}"))
        set_b.append(Sample(p.image_b, DOMAIN_B, pair_id=p.pair_id,
                            source_ref=f"{source.name}/{p.pair_id}"))
        entries.append(ManifestEntry(p.pair_id, a=_fname(p.pair_id, "a"),
                                     b=_fname(p.pair_id, "b"),
                                     origin_a="real", origin_b="real"))
    for i in a_only_idx:
        p = source.pairs[i]
        set_a.append(Sample(p.image_a, DOMAIN_A, pair_id=p.pair_id,
                            source_ref=f"{source.name}/{p.pair_id}"))
        if i in accidental:
            continue  # merged into a full entry below
        entries.append(ManifestEntry(p.pair_id, a=_fname(p.pair_id, "a"),
                                     origin_a="real"))
    for i in b_only_idx:
        p = source.pairs[i]
        set_b.append(Sample(p.image_b, DOMAIN_B, pair_id=p.pair_id,
                            source_ref=f"{source.name}/{p.pair_id}"))
        if i in accidental:
            entries.append(ManifestEntry(p.pair_id, a=_fname(p.pair_id, "a"),
                                         b=_fname(p.pair_id, "b"),
                                         origin_a="real", origin_b="real"))
        else:
            entries.append(ManifestEntry(p.pair_id, b=_fname(p.pair_id, "b"),
                                         origin_b="real"))

    realized_pairs = n_paired + len(accidental)
    manifest = PairingManifest(
        entries=entries,
        alpha_declared=realized_pairs / n_per_domain,
        seed=seed,
        source=source.name)

    # Shuffle each domain so list position carries no pairing information.
    set_a = [set_a[i] for i in rng.permutation(len(set_a))]
    set_b = [set_b[i] for i in rng.permutation(len(set_b))]
    return AlphaPairedDataset(set_a=set_a, set_b=set_b, manifest=manifest)


def _fname(pair_id, side):
    return f"{pair_id}_{side}.png"


def temporal_subsample(frame_sequence, stride: int):
    """Keep frames at indices 0, stride, 2*stride, ... in their original order."""
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    return list(frame_sequence)[::stride]


def split_corpus(source: PairedCorpus, fractions, seed: int):
    """Split a corpus into named parts before any alpha-sampling.

    ``fractions`` maps part name -> fraction; fractions must sum to <= 1 and
    the remainder (if any) goes to a part named 'rest'. Splitting the source
    corpus first keeps evaluation sets fully paired whatever alpha the train
    portion is later sampled at.
    """
    total = sum(fractions.values())
    if total > 1.0 + 1e-9:
        raise ValueError(f"fractions sum to {total} > 1")
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(source.pairs))
    out, start = {}, 0
    for name, frac in fractions.items():
        count = int(round(frac * len(source.pairs)))
        idx = order[start:start + count]
        out[name] = PairedCorpus([source.pairs[i] for i in idx],
                                 name=f"{source.name}/{name}")
        start += count
    if start < len(source.pairs):
        idx = order[start:]
        out["rest"] = PairedCorpus([source.pairs[i] for i in idx],
                                   name=f"{source.name}/rest")
    return out

"""Translation oracle plumbing and pseudo-paired dataset construction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..errors import InsufficientDonors, NonIntegralPairCount
from ..data.builder import exact_pair_count, _fname
from ..data.types import (
    DOMAIN_A,
    DOMAIN_B,
    ORIGIN_PSEUDO,
    AlphaPairedDataset,
    ManifestEntry,
    PairingManifest,
    Sample,
)


@dataclass(frozen=True)
class TranslationOracle:
    """The true translation T (when computable from pixels) and its
    approximate inverse M.

    Both callables take (image, rng) where rng is a numpy Generator used for
    any stochastic synthesis; M need not invert T exactly, it is an
    approximation by design. ``forward`` may be None for domains where T is
    known only through corpus pairs.
    """

    forward: Optional[Callable]
    inverse_approx: Callable
    descriptor: str = ""


def build_pseudo_paired(base: AlphaPairedDataset, donors, oracle: TranslationOracle,
                        target_alpha: float, seed: int) -> AlphaPairedDataset:
    """Augment an unpaired base dataset with pseudo-pairs (M(b), b).

    The augmented dataset keeps the base's per-domain size doubled: with
    base size n per domain the result holds 2n per domain, of which
    ``target_alpha * 2n`` are pseudo-pairs. Below alpha = 0.5 the remaining
    augmentation slots are filled unpaired (pseudo samples on the A side
    whose donors stay out of B, fresh real donors on the B side); above 0.5
    real unpaired base samples are removed from both domains symmetrically.
    alpha = 0.5 is all-paired augmentation, alpha = 1 pseudo-pairs only.
    """
    if base.alpha != 0.0:
        raise ValueError(f"base dataset must be unpaired, has alpha={base.alpha}")
    if not 0.0 <= target_alpha <= 1.0:
        raise ValueError(f"target_alpha must be in [0, 1], got {target_alpha}")
    if target_alpha == 0.0:
        return base

    donors = list(donors)
    n0 = len(base)
    total = 2 * n0
    n_paired = exact_pair_count(target_alpha, total)
    keep_real = min(n0, total - n_paired)
    n_aug_unpaired = total - n_paired - keep_real
    needed = n_paired + 2 * n_aug_unpaired
    if len(donors) < needed:
        raise InsufficientDonors(
            f"have {len(donors)} donors, need {needed} for alpha={target_alpha} "
            f"on a base of {n0}")

    used_ids = {s.pair_id for s in base.set_a} | {s.pair_id for s in base.set_b}
    rng = np.random.default_rng(seed)
    seeds = np.random.SeedSequence(seed).spawn(needed)
    order = rng.permutation(len(donors))
    paired_idx = order[:n_paired]
    a_only_idx = order[n_paired:n_paired + n_aug_unpaired]
    b_only_idx = order[n_paired + n_aug_unpaired:needed]

    keep_a = sorted(rng.choice(n0, size=keep_real, replace=False))
    keep_b = sorted(rng.choice(n0, size=keep_real, replace=False))
    set_a = [base.set_a[i] for i in keep_a]
    set_b = [base.set_b[i] for i in keep_b]
    entries = [_entry_for(s, side="a") for s in set_a] \
        + [_entry_for(s, side="b") for s in set_b]

    def donor_id(donor, j):
        pid = donor.pair_id or f"donor-{j:05d}"
        return pid if pid not in used_ids else f"{pid}-aug{j:05d}"

    for k, j in enumerate(paired_idx):
        donor = donors[j]
        pid = donor_id(donor, j)
        pseudo = oracle.inverse_approx(donor.image, np.random.default_rng(seeds[k]))
        set_a.append(Sample(pseudo, DOMAIN_A, origin=ORIGIN_PSEUDO, pair_id=pid,
                            source_ref=f"pseudo:{donor.source_ref}"))
        set_b.append(Sample(donor.image, DOMAIN_B, origin=donor.origin, pair_id=pid,
                            source_ref=donor.source_ref))
        entries.append(ManifestEntry(pid, a=_fname(pid, "a"), b=_fname(pid, "b"),
                                     origin_a=ORIGIN_PSEUDO, origin_b=donor.origin))
    for k, j in enumerate(a_only_idx):
        donor = donors[j]
        pid = donor_id(donor, j)
        pseudo = oracle.inverse_approx(donor.image,
                                       np.random.default_rng(seeds[n_paired + k]))
        set_a.append(Sample(pseudo, DOMAIN_A, origin=ORIGIN_PSEUDO, pair_id=pid,
                            source_ref=f"pseudo:{donor.source_ref}"))
        entries.append(ManifestEntry(pid, a=_fname(pid, "a"), origin_a=ORIGIN_PSEUDO))
    for j in b_only_idx:
        donor = donors[j]
        pid = donor_id(donor, j)
        set_b.append(Sample(donor.image, DOMAIN_B, origin=donor.origin, pair_id=pid,
                            source_ref=donor.source_ref))
        entries.append(ManifestEntry(pid, b=_fname(pid, "b"), origin_b=donor.origin))

    manifest = PairingManifest(entries=entries, alpha_declared=n_paired / total,
                               seed=seed, source=base.manifest.source + "+pseudo")
    set_a = [set_a[i] for i in rng.permutation(len(set_a))]
    set_b = [set_b[i] for i in rng.permutation(len(set_b))]
    return AlphaPairedDataset(set_a=set_a, set_b=set_b, manifest=manifest)


def _entry_for(sample: Sample, side: str) -> ManifestEntry:
    pid = sample.pair_id
    if side == "a":
        return ManifestEntry(pid, a=_fname(pid, "a"), origin_a=sample.origin)
    return ManifestEntry(pid, b=_fname(pid, "b"), origin_b=sample.origin)

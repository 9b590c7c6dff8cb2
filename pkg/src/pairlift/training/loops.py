"""Dual-GAN and conditional-GAN training loops.

The unsupervised loop can only see a DomainView: two per-domain image
stacks with no manifest, pair ids, or sample metadata. Pairing information
therefore cannot leak into sampling; any benefit from pairs present in the
data is genuinely implicit.
"""

from __future__ import annotations

import time

import numpy as np
import torch
import torch.nn as nn

from ..errors import (
    DivergenceDetected,
    RequiresFullyPaired,
    ResolutionMismatch,
)
from ..models.checkpoint import (
    checkpoint_from_cyclegan,
    checkpoint_from_pix2pix,
    restore_networks,
    save_checkpoint,
)
from ..validation import check_image_stack
from .config import TrainConfig, TrainLog

torch.set_flush_denormal(True)


class DomainView:
    """Capability-restricted dataset view: per-domain images, nothing else."""

    __slots__ = ("images_a", "images_b")

    def __init__(self, images_a, images_b):
        self.images_a = check_image_stack(images_a, "images_a")
        self.images_b = check_image_stack(images_b, "images_b")


def pairing_oblivious_view(dataset) -> DomainView:
    """Strip an AlphaPairedDataset down to the two image stacks."""
    return DomainView(dataset.images_a(), dataset.images_b())


def paired_arrays(dataset):
    """Aligned (A, B) stacks for supervised training; requires alpha = 1."""
    if dataset.alpha != 1.0:
        raise RequiresFullyPaired(
            f"supervised training needs alpha = 1, got {dataset.alpha}")
    by_id_b = {s.pair_id: s for s in dataset.set_b}
    xs, ys = [], []
    for sample in dataset.set_a:
        xs.append(sample.image)
        ys.append(by_id_b[sample.pair_id].image)
    return np.stack(xs), np.stack(ys)


def epoch_batches(n_a, n_b, batch_size, seed, epoch):
    """Independently shuffled per-domain index batches for one epoch.

    Batch order is a pure function of (seed, epoch). The trailing partial
    batch is dropped so every step sees a full batch; with fewer samples
    than the batch size the whole domain forms one batch.
    """
    rng = np.random.default_rng(np.random.SeedSequence([seed, 7919 + epoch]))
    perm_a = rng.permutation(n_a)
    perm_b = rng.permutation(n_b)
    bs = min(batch_size, n_a, n_b)
    steps = min(n_a, n_b) // bs
    return [(perm_a[i * bs:(i + 1) * bs], perm_b[i * bs:(i + 1) * bs])
            for i in range(steps)]


def _to_tensor(stack):
    return torch.from_numpy(np.ascontiguousarray(stack)).permute(0, 3, 1, 2).contiguous()


def _adv_losses(kind):
    if kind == "least_squares":
        crit = nn.MSELoss()

        def for_real(logits):
            return crit(logits, torch.ones_like(logits))

        def for_fake(logits):
            return crit(logits, torch.zeros_like(logits))
    else:
        crit = nn.BCEWithLogitsLoss()

        def for_real(logits):
            return crit(logits, torch.ones_like(logits))

        def for_fake(logits):
            return crit(logits, torch.zeros_like(logits))
    return for_real, for_fake


def train_unsupervised(data, nets, cfg: TrainConfig, checkpoint_dir=None):
    """Train the dual generator/discriminator pair on unpaired batches.

    ``data`` may be an AlphaPairedDataset (converted to a DomainView first)
    or a DomainView. Each step draws a batch from A and an independently
    shuffled batch from B and optimizes the adversarial losses of both
    directions plus the weighted cycle reconstruction. Raises
    DivergenceDetected (carrying the last finite checkpoint) if any loss
    goes non-finite.
    """
    view = data if isinstance(data, DomainView) else pairing_oblivious_view(data)
    g_a, g_b, d_a, d_b = nets
    a_all = _to_tensor(view.images_a)
    b_all = _to_tensor(view.images_b)
    resolution = a_all.shape[-1]

    torch.manual_seed(cfg.seed)
    opt_g = torch.optim.Adam(
        list(g_a.parameters()) + list(g_b.parameters()),
        lr=cfg.lr_g, betas=(cfg.beta1, cfg.beta2))
    opt_d = torch.optim.Adam(
        list(d_a.parameters()) + list(d_b.parameters()),
        lr=cfg.lr_d, betas=(cfg.beta1, cfg.beta2))
    for_real, for_fake = _adv_losses(cfg.adversarial_loss)
    l1 = nn.L1Loss()

    def snapshot():
        return checkpoint_from_cyclegan(
            nets, getattr(g_a, "scale", None), getattr(g_a, "n_resblocks", None),
            resolution, cfg.seed, extra={"config": cfg.to_dict()})

    log = TrainLog(seed=cfg.seed,
                   optimizer=f"adam(lr={cfg.lr_g}, betas=({cfg.beta1}, {cfg.beta2}))")
    last_good = snapshot()
    for epoch in range(cfg.epochs):
        t0 = time.perf_counter()
        sums = {k: 0.0 for k in ("g_a2b", "g_b2a", "d_a", "d_b", "cycle_a", "cycle_b")}
        batches = epoch_batches(len(a_all), len(b_all), cfg.batch_size,
                                cfg.seed, epoch)
        for idx_a, idx_b in batches:
            a = a_all[idx_a]
            b = b_all[idx_b]

            fake_b = g_a(a)
            fake_a = g_b(b)
            rec_a = g_b(fake_b)
            rec_b = g_a(fake_a)
            adv_a2b = for_real(d_b(fake_b))
            adv_b2a = for_real(d_a(fake_a))
            cyc_a = l1(rec_a, a)
            cyc_b = l1(rec_b, b)
            loss_g = adv_a2b + adv_b2a + cfg.cycle_weight * (cyc_a + cyc_b)
            if cfg.identity_weight > 0:
                loss_g = loss_g + cfg.identity_weight * (
                    l1(g_a(b), b) + l1(g_b(a), a))
            opt_g.zero_grad()
            loss_g.backward()
            opt_g.step()

            loss_d_a = 0.5 * (for_real(d_a(a)) + for_fake(d_a(fake_a.detach())))
            loss_d_b = 0.5 * (for_real(d_b(b)) + for_fake(d_b(fake_b.detach())))
            opt_d.zero_grad()
            (loss_d_a + loss_d_b).backward()
            opt_d.step()

            sums["g_a2b"] += adv_a2b.item()
            sums["g_b2a"] += adv_b2a.item()
            sums["d_a"] += loss_d_a.item()
            sums["d_b"] += loss_d_b.item()
            sums["cycle_a"] += cyc_a.item()
            sums["cycle_b"] += cyc_b.item()

        n = max(1, len(batches))
        record = {"epoch": epoch, **{k: v / n for k, v in sums.items()},
                  "wall_time": time.perf_counter() - t0}
        if not all(np.isfinite(v) for k, v in record.items() if k != "epoch"):
            raise DivergenceDetected(
                f"non-finite loss at epoch {epoch}: {record}", checkpoint=last_good)
        log.append_epoch(record)
        last_good = snapshot()
        if checkpoint_dir and cfg.checkpoint_interval \
                and (epoch + 1) % cfg.checkpoint_interval == 0:
            save_checkpoint(last_good, f"{checkpoint_dir}/epoch{epoch + 1:04d}.pt")

    return last_good, log


def train_supervised(dataset, nets, cfg: TrainConfig, checkpoint_dir=None):
    """Train the conditional generator on explicitly linked pairs.

    Each step draws pairs sharing a pair_id and optimizes the conditional
    adversarial loss plus weighted L1 reconstruction against the paired
    target. The dataset must be fully paired.
    """
    xs, ys = paired_arrays(dataset)
    g, d = nets
    a_all = _to_tensor(xs)
    b_all = _to_tensor(ys)
    resolution = a_all.shape[-1]

    torch.manual_seed(cfg.seed)
    opt_g = torch.optim.Adam(g.parameters(), lr=cfg.lr_g,
                             betas=(cfg.beta1, cfg.beta2))
    opt_d = torch.optim.Adam(d.parameters(), lr=cfg.lr_d,
                             betas=(cfg.beta1, cfg.beta2))
    for_real, for_fake = _adv_losses(cfg.adversarial_loss)
    l1 = nn.L1Loss()

    def snapshot():
        return checkpoint_from_pix2pix(
            nets, getattr(g, "scale", None), resolution, cfg.seed,
            extra={"config": cfg.to_dict()})

    log = TrainLog(seed=cfg.seed,
                   optimizer=f"adam(lr={cfg.lr_g}, betas=({cfg.beta1}, {cfg.beta2}))")
    last_good = snapshot()
    for epoch in range(cfg.epochs):
        t0 = time.perf_counter()
        sums = {k: 0.0 for k in ("g_adv", "g_l1", "d")}
        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, 7919 + epoch]))
        perm = rng.permutation(len(a_all))
        bs = min(cfg.batch_size, len(a_all))
        steps = len(a_all) // bs
        for i in range(steps):
            idx = perm[i * bs:(i + 1) * bs]
            a = a_all[idx]
            b = b_all[idx]

            fake_b = g(a)
            adv = for_real(d(torch.cat([a, fake_b], dim=1)))
            rec = l1(fake_b, b)
            loss_g = adv + cfg.l1_weight * rec
            opt_g.zero_grad()
            loss_g.backward()
            opt_g.step()

            loss_d = 0.5 * (for_real(d(torch.cat([a, b], dim=1)))
                            + for_fake(d(torch.cat([a, fake_b.detach()], dim=1))))
            opt_d.zero_grad()
            loss_d.backward()
            opt_d.step()

            sums["g_adv"] += adv.item()
            sums["g_l1"] += rec.item()
            sums["d"] += loss_d.item()

        n = max(1, steps)
        record = {"epoch": epoch, **{k: v / n for k, v in sums.items()},
                  "wall_time": time.perf_counter() - t0}
        if not all(np.isfinite(v) for k, v in record.items() if k != "epoch"):
            raise DivergenceDetected(
                f"non-finite loss at epoch {epoch}: {record}", checkpoint=last_good)
        log.append_epoch(record)
        last_good = snapshot()
        if checkpoint_dir and cfg.checkpoint_interval \
                and (epoch + 1) % cfg.checkpoint_interval == 0:
            save_checkpoint(last_good, f"{checkpoint_dir}/epoch{epoch + 1:04d}.pt")

    return last_good, log


def translate(checkpoint, images, direction="a2b", batch_size=64):
    """Pure inference through a checkpointed generator; outputs in [0, 1]."""
    if direction not in ("a2b", "b2a"):
        raise ValueError(f"direction must be a2b or b2a, got {direction!r}")
    stack = check_image_stack(images, "images")
    if stack.shape[1] != checkpoint["resolution"] \
            or stack.shape[2] != checkpoint["resolution"]:
        raise ResolutionMismatch(
            f"images are {stack.shape[1]}x{stack.shape[2]}, checkpoint trained "
            f"at {checkpoint['resolution']}")
    nets = restore_networks(checkpoint)
    if checkpoint["kind"] == "cyclegan":
        gen = nets[0] if direction == "a2b" else nets[1]
    else:
        if direction != "a2b":
            raise ValueError("a conditional checkpoint only translates a2b")
        gen = nets[0]
    return apply_generator(gen, stack, batch_size=batch_size)


def apply_generator(gen, images, batch_size=64):
    """Run a generator over an image stack without tracking gradients."""
    stack = check_image_stack(images, "images")
    gen.eval()
    data = _to_tensor(stack)
    outs = []
    with torch.no_grad():
        for start in range(0, len(data), batch_size):
            out = gen(data[start:start + batch_size])
            outs.append(out.permute(0, 2, 3, 1).contiguous().numpy())
    return np.concatenate(outs, axis=0)

"""Self-describing checkpoint container for translators."""

from __future__ import annotations

from pathlib import Path

import torch

from ..errors import CheckpointMismatch
from .networks import (
    DiscriminatorNet,
    GeneratorNet,
    UNetGeneratorNet,
    build_cyclegan_networks,
    build_pix2pix_networks,
)

FORMAT_VERSION = 1


def checkpoint_from_cyclegan(nets, scale, n_resblocks, resolution, seed, extra=None):
    g_a, g_b, d_a, d_b = nets
    return {
        "format_version": FORMAT_VERSION,
        "kind": "cyclegan",
        "notation": {
            "generator": g_a.spec.notation,
            "discriminator": d_a.spec.notation,
        },
        "scale": scale,
        "n_resblocks": n_resblocks,
        "resolution": resolution,
        "seed": seed,
        "state": {
            "g_a": _cpu_state(g_a), "g_b": _cpu_state(g_b),
            "d_a": _cpu_state(d_a), "d_b": _cpu_state(d_b),
        },
        "extra": extra or {},
    }


def checkpoint_from_pix2pix(nets, scale, resolution, seed, extra=None):
    g, d = nets
    return {
        "format_version": FORMAT_VERSION,
        "kind": "pix2pix",
        "notation": {
            "generator": g.notation,
            "discriminator": d.spec.notation,
        },
        "scale": scale,
        "resolution": resolution,
        "seed": seed,
        "state": {"g": _cpu_state(g), "d": _cpu_state(d)},
        "extra": extra or {},
    }


def save_checkpoint(checkpoint: dict, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    torch.save(checkpoint, path)


def load_checkpoint(path) -> dict:
    return torch.load(Path(path), map_location="cpu", weights_only=False)


def restore_networks(checkpoint: dict):
    """Rebuild the networks a checkpoint describes and load their weights."""
    if checkpoint.get("format_version") != FORMAT_VERSION:
        raise CheckpointMismatch(
            f"unsupported checkpoint version {checkpoint.get('format_version')}")
    if checkpoint["kind"] == "cyclegan":
        nets = build_cyclegan_networks(checkpoint["scale"], checkpoint["n_resblocks"])
        _verify(nets[0].spec.notation, checkpoint["notation"]["generator"])
        _verify(nets[2].spec.notation, checkpoint["notation"]["discriminator"])
        for net, key in zip(nets, ("g_a", "g_b", "d_a", "d_b")):
            net.load_state_dict(checkpoint["state"][key])
            net.eval()
        return nets
    if checkpoint["kind"] == "pix2pix":
        g, d = build_pix2pix_networks(checkpoint["scale"], checkpoint["resolution"])
        _verify(g.notation, checkpoint["notation"]["generator"])
        _verify(d.spec.notation, checkpoint["notation"]["discriminator"])
        g.load_state_dict(checkpoint["state"]["g"])
        d.load_state_dict(checkpoint["state"]["d"])
        g.eval()
        d.eval()
        return g, d
    raise CheckpointMismatch(f"unknown checkpoint kind {checkpoint['kind']!r}")


def load_into(net, checkpoint: dict, key: str, expected_notation: str):
    """Load one state dict into an existing network, verifying its notation."""
    _verify(expected_notation, _notation_of(net))
    try:
        net.load_state_dict(checkpoint["state"][key])
    except (KeyError, RuntimeError) as exc:
        raise CheckpointMismatch(str(exc)) from exc
    return net


def _notation_of(net):
    if isinstance(net, UNetGeneratorNet):
        return net.notation
    if isinstance(net, (GeneratorNet, DiscriminatorNet)):
        return net.spec.notation
    raise CheckpointMismatch(f"unknown network type {type(net).__name__}")


def _verify(expected, actual):
    if expected != actual:
        raise CheckpointMismatch(
            f"notation mismatch: checkpoint {actual!r} vs network {expected!r}")


def _cpu_state(net):
    return {k: v.detach().clone().cpu() for k, v in net.state_dict().items()}

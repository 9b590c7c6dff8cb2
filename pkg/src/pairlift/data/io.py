"""Save/load of alpha-paired datasets as PNG trees plus a JSON manifest.

Layout::

    root/
      A/<pair_id>_a.png
      B/<pair_id>_b.png
      manifest.json

PNGs are 8-bit RGB. Images are quantized onto the 8-bit grid when saved, so
a save -> load round trip reproduces samples bit-exactly provided the input
images already lie on that grid (all procedural generators in this package
emit quantized images).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from PIL import Image

from ..errors import MalformedManifest, ManifestMismatch
from .types import (
    DOMAIN_A,
    DOMAIN_B,
    AlphaPairedDataset,
    ManifestEntry,
    PairingManifest,
    Sample,
)

MANIFEST_NAME = "manifest.json"


def save_dataset(dataset: AlphaPairedDataset, root_path):
    root = Path(root_path)
    (root / "A").mkdir(parents=True, exist_ok=True)
    (root / "B").mkdir(parents=True, exist_ok=True)

    by_id_a = {s.pair_id: s for s in dataset.set_a}
    by_id_b = {s.pair_id: s for s in dataset.set_b}
    for entry in dataset.manifest.entries:
        if entry.a is not None:
            _write_png(root / "A" / entry.a, by_id_a[entry.pair_id].image)
        if entry.b is not None:
            _write_png(root / "B" / entry.b, by_id_b[entry.pair_id].image)

    payload = {
        "alpha": dataset.manifest.alpha_declared,
        "seed": dataset.manifest.seed,
        "source": dataset.manifest.source,
        "entries": [
            {"pair_id": e.pair_id, "a": e.a, "b": e.b,
             "origin_a": e.origin_a, "origin_b": e.origin_b}
            for e in dataset.manifest.entries
        ],
    }
    with open(root / MANIFEST_NAME, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)


def load_dataset(root_path) -> AlphaPairedDataset:
    root = Path(root_path)
    manifest_path = root / MANIFEST_NAME
    if not manifest_path.is_file():
        raise MalformedManifest(f"no {MANIFEST_NAME} under {root}")
    try:
        with open(manifest_path) as fh:
            payload = json.load(fh)
        entries = [
            ManifestEntry(pair_id=e["pair_id"], a=e.get("a"), b=e.get("b"),
                          origin_a=e.get("origin_a"), origin_b=e.get("origin_b"))
            for e in payload["entries"]
        ]
        manifest = PairingManifest(
            entries=entries,
            alpha_declared=payload["alpha"],
            seed=payload.get("seed"),
            source=payload.get("source", ""))
    except MalformedManifest:
        raise
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise MalformedManifest(f"cannot parse {manifest_path}: {exc}") from exc

    set_a, set_b = [], []
    for entry in manifest.entries:
        if entry.a is not None:
            set_a.append(Sample(
                _read_png(root / "A" / entry.a), DOMAIN_A,
                origin=entry.origin_a or "real",
                pair_id=entry.pair_id,
                source_ref=str(root / "A" / entry.a)))
        if entry.b is not None:
            set_b.append(Sample(
                _read_png(root / "B" / entry.b), DOMAIN_B,
                origin=entry.origin_b or "real",
                pair_id=entry.pair_id,
                source_ref=str(root / "B" / entry.b)))

    _check_no_strays(root, manifest)
    try:
        return AlphaPairedDataset(set_a=set_a, set_b=set_b, manifest=manifest)
    except ValueError as exc:
        raise ManifestMismatch(str(exc)) from exc


def _write_png(path, image):
    arr = np.round(np.asarray(image) * 255.0).astype(np.uint8)
    Image.fromarray(arr, mode="RGB").save(path)


def _read_png(path):
    if not Path(path).is_file():
        raise ManifestMismatch(f"manifest lists missing file {path}")
    with Image.open(path) as im:
        arr = np.asarray(im.convert("RGB"), dtype=np.float32)
    return arr / np.float32(255.0)


def _check_no_strays(root, manifest):
    listed_a = {e.a for e in manifest.entries if e.a is not None}
    listed_b = {e.b for e in manifest.entries if e.b is not None}
    on_disk_a = {p.name for p in (root / "A").glob("*.png")} if (root / "A").is_dir() else set()
    on_disk_b = {p.name for p in (root / "B").glob("*.png")} if (root / "B").is_dir() else set()
    stray = (on_disk_a - listed_a) | (on_disk_b - listed_b)
    if stray:
        raise ManifestMismatch(
            f"files on disk not listed in manifest: {sorted(stray)[:5]}")

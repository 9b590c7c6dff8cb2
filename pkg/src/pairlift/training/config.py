"""Training configuration and the per-epoch log."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

ADVERSARIAL_LOSSES = ("least_squares", "cross_entropy")


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 200
    batch_size: int = 25
    lr_g: float = 2e-4
    lr_d: float = 2e-4
    beta1: float = 0.5
    beta2: float = 0.999
    cycle_weight: float = 10.0
    identity_weight: float = 0.0
    l1_weight: float = 100.0
    adversarial_loss: str = "least_squares"
    seed: int = 0
    checkpoint_interval: int = 0

    def __post_init__(self):
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.cycle_weight < 0:
            raise ValueError("cycle_weight must be >= 0")
        if self.adversarial_loss not in ADVERSARIAL_LOSSES:
            raise ValueError(
                f"adversarial_loss must be one of {ADVERSARIAL_LOSSES}")

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


@dataclass
class TrainLog:
    """One record per completed epoch; all losses finite by construction."""

    seed: int
    optimizer: str = "adam(lr=2e-4, betas=(0.5, 0.999))"
    entries: list = field(default_factory=list)

    def append_epoch(self, record: dict):
        for key, value in record.items():
            if key == "epoch":
                continue
            if isinstance(value, float) and not math.isfinite(value):
                raise ValueError(f"non-finite loss {key}={value}")
        self.entries.append(dict(record))

    def loss_trajectory(self, key):
        return [e[key] for e in self.entries]

    def to_jsonl(self, path):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as fh:
            fh.write(json.dumps({"seed": self.seed, "optimizer": self.optimizer}) + "\n")
            for entry in self.entries:
                fh.write(json.dumps(entry, sort_keys=True) + "\n")

    @classmethod
    def from_jsonl(cls, path):
        with open(path) as fh:
            lines = [json.loads(line) for line in fh if line.strip()]
        header = lines[0]
        log = cls(seed=header["seed"], optimizer=header.get("optimizer", ""))
        log.entries = lines[1:]
        return log

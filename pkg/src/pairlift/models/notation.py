"""Parsing and rendering of the compact layer notation for network specs.

Grammar (one token per layer):

    c7s1-k   7x7 convolution, stride 1, k filters, instance norm, ReLU
    dk       3x3 convolution, stride 2, k filters, instance norm, ReLU
    Rk       residual block: two 3x3 convolutions with k filters each
    uk       3x3 fractional-stride-1/2 convolution, k filters, instance norm, ReLU
    Ck       4x4 convolution, stride 2, k filters, norm, LeakyReLU
    CDk      Ck plus 50% dropout

Tokens are joined by ',' or '-'; a token may carry a repetition suffix
'xN' / '×N' (e.g. "R256×9"). All strings a builder emits are either fully
expanded or maximally compacted, and render(parse(s)) == s holds for both.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import UnknownToken

KIND_CONV7S1 = "conv7s1"
KIND_DOWNCONV = "downconv"
KIND_RESBLOCK = "resblock"
KIND_UPCONV = "upconv"
KIND_CONV4S2 = "conv4s2"
KIND_CONV4S2_DROPOUT = "conv4s2_dropout"

_TOKEN_RE = re.compile(
    r"(?P<body>c7s1-(?P<k1>\d+)|CD(?P<k2>\d+)|C(?P<k3>\d+)"
    r"|R(?P<k4>\d+)|d(?P<k5>\d+)|u(?P<k6>\d+))"
    r"(?:[x×](?P<rep>\d+))?$")

_SPLIT_RE = re.compile(
    r"c7s1-\d+(?:[x×]\d+)?|CD\d+(?:[x×]\d+)?|C\d+(?:[x×]\d+)?"
    r"|R\d+(?:[x×]\d+)?|d\d+(?:[x×]\d+)?|u\d+(?:[x×]\d+)?")


@dataclass(frozen=True)
class LayerSpec:
    kind: str
    filters: int
    norm: str = "instance"         # instance | batch | none
    activation: str = "relu"       # relu | leaky_relu | none
    dropout: float = 0.0

    def __post_init__(self):
        if self.filters < 1:
            raise ValueError(f"filters must be >= 1, got {self.filters}")
        if self.dropout not in (0.0, 0.5):
            raise ValueError(f"dropout must be 0 or 0.5, got {self.dropout}")


@dataclass(frozen=True)
class NetworkSpec:
    layers: tuple
    role: str                      # generator | discriminator
    notation: str

    def __post_init__(self):
        if self.role not in ("generator", "discriminator"):
            raise ValueError(f"bad role {self.role!r}")


def parse_layer_token(token: str, conv4_norm: str = "batch") -> LayerSpec:
    """Parse one notation token (without repetition suffix) into a LayerSpec.

    ``conv4_norm`` selects the norm for C/CD tokens: batch per their
    definition, instance when building the dual-GAN discriminators.
    """
    m = _TOKEN_RE.match(token)
    if m is None or m.group("rep") is not None:
        raise UnknownToken(f"unrecognized layer token {token!r}")
    if m.group("k1") is not None:
        return LayerSpec(KIND_CONV7S1, int(m.group("k1")), "instance", "relu")
    if m.group("k2") is not None:
        return LayerSpec(KIND_CONV4S2_DROPOUT, int(m.group("k2")), conv4_norm,
                         "leaky_relu", dropout=0.5)
    if m.group("k3") is not None:
        return LayerSpec(KIND_CONV4S2, int(m.group("k3")), conv4_norm, "leaky_relu")
    if m.group("k4") is not None:
        return LayerSpec(KIND_RESBLOCK, int(m.group("k4")), "instance", "relu")
    if m.group("k5") is not None:
        return LayerSpec(KIND_DOWNCONV, int(m.group("k5")), "instance", "relu")
    return LayerSpec(KIND_UPCONV, int(m.group("k6")), "instance", "relu")


def render_layer_token(layer: LayerSpec) -> str:
    if layer.kind == KIND_CONV7S1:
        return f"c7s1-{layer.filters}"
    if layer.kind == KIND_DOWNCONV:
        return f"d{layer.filters}"
    if layer.kind == KIND_RESBLOCK:
        return f"R{layer.filters}"
    if layer.kind == KIND_UPCONV:
        return f"u{layer.filters}"
    if layer.kind == KIND_CONV4S2:
        return f"C{layer.filters}"
    if layer.kind == KIND_CONV4S2_DROPOUT:
        return f"CD{layer.filters}"
    raise ValueError(f"unknown layer kind {layer.kind!r}")


def parse_notation(notation: str, conv4_norm: str = "batch"):
    """Parse a full notation string into a list of LayerSpec."""
    stripped = notation.replace(" ", "")
    found = _SPLIT_RE.findall(stripped)
    leftover = _SPLIT_RE.sub("", stripped).replace(",", "").replace("-", "")
    if not found or leftover:
        raise UnknownToken(f"cannot tokenize notation {notation!r}")
    layers = []
    for chunk in found:
        m = re.match(r"(.*?)[x×](\d+)$", chunk)
        if m:
            base, rep = m.group(1), int(m.group(2))
        else:
            base, rep = chunk, 1
        layers.extend([parse_layer_token(base, conv4_norm)] * rep)
    return layers


def render_notation(layers, separator: str = ",", compact: bool = False) -> str:
    """Render layers back to a notation string.

    With ``compact=True`` maximal runs of identical tokens collapse to
    'token×N'.
    """
    tokens = [render_layer_token(l) for l in layers]
    if not compact:
        return separator.join(tokens)
    out = []
    i = 0
    while i < len(tokens):
        j = i
        while j < len(tokens) and tokens[j] == tokens[i]:
            j += 1
        run = j - i
        out.append(tokens[i] if run == 1 else f"{tokens[i]}×{run}")
        i = j
    return separator.join(out)


def parse_network(notation: str, role: str, conv4_norm: str = "batch") -> NetworkSpec:
    return NetworkSpec(layers=tuple(parse_notation(notation, conv4_norm)),
                       role=role, notation=notation.replace(" ", ""))


def render_network(spec: NetworkSpec) -> str:
    """Re-render a NetworkSpec in the same separator/compaction style it was
    written in; round-trips parse_network exactly."""
    separator = "," if "," in spec.notation else "-"
    compact = ("x" in spec.notation.replace("c7s1", "")) or ("×" in spec.notation)
    return render_notation(spec.layers, separator=separator, compact=compact)

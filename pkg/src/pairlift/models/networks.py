"""Torch networks built from parsed layer notation.

All generators and discriminators exchange images in [0, 1]; inputs are
shifted to [-1, 1] internally and bounded generator outputs come back
through a rescaled tanh. Zero padding throughout.
"""

from __future__ import annotations

import math

import torch
import torch.nn as nn

from ..errors import InvalidScale, ResolutionTooSmall
from . import notation as nt

VALID_SCALES = (1.0, 0.5, 0.25, 0.125)

CYCLEGAN_GEN_WIDTHS = (64, 128, 256)
DISC_WIDTHS = (64, 128, 256, 512)
PIX2PIX_ENC_WIDTHS = (64, 128, 256, 512, 512, 512, 512, 512)


def _norm(kind, channels):
    if kind == "instance":
        return nn.InstanceNorm2d(channels)
    if kind == "batch":
        return nn.BatchNorm2d(channels)
    return None


class ResidualBlock(nn.Module):
    """Two 3x3 convolutions with equal filters and an additive skip."""

    def __init__(self, channels):
        super().__init__()
        self.block = nn.Sequential(
            nn.Conv2d(channels, channels, 3, 1, 1),
            nn.InstanceNorm2d(channels),
            nn.ReLU(inplace=True),
            nn.Conv2d(channels, channels, 3, 1, 1),
            nn.InstanceNorm2d(channels),
        )

    def forward(self, x):
        return x + self.block(x)


class GeneratorNet(nn.Module):
    """Residual-style generator assembled from a layer-spec sequence.

    When the final layer is a c7s1 projection to ``out_channels`` the module
    runs bounded: inputs are mapped to [-1, 1], the head applies tanh and
    output returns to [0, 1]. Otherwise the layer chain is applied raw (used
    by micro-networks in tests).
    """

    def __init__(self, spec: nt.NetworkSpec, in_channels=3, out_channels=3):
        super().__init__()
        self.spec = spec
        layers = list(spec.layers)
        self.bounded = bool(layers) and layers[-1].kind == nt.KIND_CONV7S1 \
            and layers[-1].filters == out_channels
        mods = []
        c = in_channels
        for i, layer in enumerate(layers):
            is_head = self.bounded and i == len(layers) - 1
            if layer.kind == nt.KIND_CONV7S1:
                mods.append(nn.Conv2d(c, layer.filters, 7, 1, 3))
                if not is_head:
                    mods.extend([_norm("instance", layer.filters), nn.ReLU(inplace=True)])
            elif layer.kind == nt.KIND_DOWNCONV:
                mods.extend([nn.Conv2d(c, layer.filters, 3, 2, 1),
                             _norm("instance", layer.filters), nn.ReLU(inplace=True)])
            elif layer.kind == nt.KIND_UPCONV:
                mods.extend([nn.ConvTranspose2d(c, layer.filters, 3, 2, 1, output_padding=1),
                             _norm("instance", layer.filters), nn.ReLU(inplace=True)])
            elif layer.kind == nt.KIND_RESBLOCK:
                if layer.filters != c:
                    raise ValueError(
                        f"residual block filters {layer.filters} != incoming {c}")
                mods.append(ResidualBlock(c))
            else:
                raise ValueError(f"{layer.kind} not valid in a generator")
            c = layer.filters
        self.body = nn.Sequential(*mods)

    def forward(self, x):
        if self.bounded:
            h = self.body(x * 2.0 - 1.0)
            return (torch.tanh(h) + 1.0) / 2.0
        return self.body(x)


class DiscriminatorNet(nn.Module):
    """Fully convolutional patch discriminator from C/CD layer specs.

    The first conv layer skips normalization; a final 1-filter 4x4 conv
    produces the patch decision map.
    """

    def __init__(self, spec: nt.NetworkSpec, in_channels=3):
        super().__init__()
        self.spec = spec
        mods = []
        c = in_channels
        for i, layer in enumerate(spec.layers):
            if layer.kind not in (nt.KIND_CONV4S2, nt.KIND_CONV4S2_DROPOUT):
                raise ValueError(f"{layer.kind} not valid in a discriminator")
            mods.append(nn.Conv2d(c, layer.filters, 4, 2, 1))
            if i > 0:
                mods.append(_norm(layer.norm, layer.filters))
            mods.append(nn.LeakyReLU(0.2, inplace=True))
            if layer.dropout:
                mods.append(nn.Dropout(layer.dropout))
            c = layer.filters
        mods.append(nn.Conv2d(c, 1, 4, 1, 1))
        self.body = nn.Sequential(*mods)

    def forward(self, x):
        return self.body(x * 2.0 - 1.0)


class UNetGeneratorNet(nn.Module):
    """Encoder/decoder generator with skip concatenations.

    The innermost encoder stage (1x1 spatial) carries no norm layer.
    """

    def __init__(self, encoder_spec: nt.NetworkSpec, decoder_spec: nt.NetworkSpec,
                 in_channels=3, out_channels=3):
        super().__init__()
        self.encoder_spec = encoder_spec
        self.decoder_spec = decoder_spec
        enc_layers = list(encoder_spec.layers)
        dec_layers = list(decoder_spec.layers)
        if len(dec_layers) != len(enc_layers) - 1:
            raise ValueError("decoder must have encoder depth - 1 stages")

        self.downs = nn.ModuleList()
        c = in_channels
        for i, layer in enumerate(enc_layers):
            mods = [nn.Conv2d(c, layer.filters, 4, 2, 1)]
            if 0 < i < len(enc_layers) - 1:
                mods.append(_norm(layer.norm, layer.filters))
            mods.append(nn.LeakyReLU(0.2, inplace=True))
            self.downs.append(nn.Sequential(*mods))
            c = layer.filters

        enc_widths = [l.filters for l in enc_layers]
        self.ups = nn.ModuleList()
        for i, layer in enumerate(dec_layers):
            in_c = c if i == 0 else dec_layers[i - 1].filters + enc_widths[-1 - i]
            mods = [nn.ConvTranspose2d(in_c, layer.filters, 4, 2, 1),
                    _norm(layer.norm, layer.filters)]
            if layer.dropout:
                mods.append(nn.Dropout(layer.dropout))
            mods.append(nn.ReLU(inplace=True))
            self.ups.append(nn.Sequential(*mods))
        self.final = nn.ConvTranspose2d(
            dec_layers[-1].filters + enc_widths[0], out_channels, 4, 2, 1)

    @property
    def notation(self):
        return f"{self.encoder_spec.notation};{self.decoder_spec.notation}"

    def forward(self, x):
        h = x * 2.0 - 1.0
        skips = []
        for down in self.downs:
            h = down(h)
            skips.append(h)
        skips = skips[:-1]
        for i, up in enumerate(self.ups):
            h = up(h)
            h = torch.cat([h, skips[-1 - i]], dim=1)
        return (torch.tanh(self.final(h)) + 1.0) / 2.0


def init_weights(module, std=0.02):
    """DCGAN-style init: convs N(0, std), norm gains N(1, std), biases 0."""
    for m in module.modules():
        if isinstance(m, (nn.Conv2d, nn.ConvTranspose2d)):
            nn.init.normal_(m.weight, 0.0, std)
            if m.bias is not None:
                nn.init.zeros_(m.bias)
        elif isinstance(m, nn.BatchNorm2d):
            nn.init.normal_(m.weight, 1.0, std)
            nn.init.zeros_(m.bias)
    return module


def _check_scale(scale):
    if not any(abs(scale - s) < 1e-12 for s in VALID_SCALES):
        raise InvalidScale(f"scale must be one of {VALID_SCALES}, got {scale}")


def _w(base, scale):
    return max(1, int(round(base * scale)))


def build_cyclegan_networks(scale=1.0, n_resblocks=9):
    """Dual generators and patch discriminators at the given width multiplier.

    At scale 1 with 9 residual blocks, the generator renders to
    "c7s1-64,d128,d256,R256x9,u128,u64,c7s1-3" and each discriminator to
    "C64-C128-C256-C512" (instance norm).
    """
    _check_scale(scale)
    if n_resblocks < 1:
        raise ValueError("n_resblocks must be >= 1")
    g1, g2, g3 = (_w(b, scale) for b in CYCLEGAN_GEN_WIDTHS)
    gen_layers = (
        [nt.parse_layer_token(f"c7s1-{g1}"), nt.parse_layer_token(f"d{g2}"),
         nt.parse_layer_token(f"d{g3}")]
        + [nt.parse_layer_token(f"R{g3}")] * n_resblocks
        + [nt.parse_layer_token(f"u{g2}"), nt.parse_layer_token(f"u{g1}"),
           nt.parse_layer_token("c7s1-3")])
    gen_spec = nt.NetworkSpec(
        layers=tuple(gen_layers), role="generator",
        notation=nt.render_notation(gen_layers, ",", compact=True))

    disc_tokens = [f"C{_w(b, scale)}" for b in DISC_WIDTHS]
    disc_spec = nt.parse_network("-".join(disc_tokens), "discriminator",
                                 conv4_norm="instance")

    g_a = init_weights(GeneratorNet(gen_spec))
    g_b = init_weights(GeneratorNet(gen_spec))
    d_a = init_weights(DiscriminatorNet(disc_spec))
    d_b = init_weights(DiscriminatorNet(disc_spec))
    for net in (g_a, g_b, d_a, d_b):
        net.scale = scale
        net.n_resblocks = n_resblocks
    return g_a, g_b, d_a, d_b


def pix2pix_depth(resolution):
    if resolution < 8 or (resolution & (resolution - 1)) != 0:
        raise ResolutionTooSmall(
            f"resolution must be a power of two >= 8, got {resolution}")
    return min(8, int(math.log2(resolution)))


def build_pix2pix_networks(scale=1.0, resolution=256):
    """Conditional U-Net generator and patch discriminator.

    The full-depth encoder is "C64-C128-C256-C512-C512-C512-C512-C512" with
    decoder "CD512-CD512-CD512-C512-C256-C128-C64"; at smaller resolutions
    the depth truncates so the bottleneck is 1x1 and the decoder mirrors the
    truncated encoder (dropout on the up-to-three innermost 512-wide
    decoder stages, which reproduces the full pattern at depth 8).
    """
    _check_scale(scale)
    depth = pix2pix_depth(resolution)
    enc_widths = [_w(b, scale) for b in PIX2PIX_ENC_WIDTHS[:depth]]
    enc_spec = nt.parse_network("-".join(f"C{w}" for w in enc_widths),
                                "generator", conv4_norm="batch")
    dec_widths = list(reversed(enc_widths))[1:]
    w512 = _w(512, scale)
    dec_tokens = [
        ("CD" if (i < 3 and w == w512) else "C") + str(w)
        for i, w in enumerate(dec_widths)]
    dec_spec = nt.parse_network("-".join(dec_tokens), "generator",
                                conv4_norm="batch")

    disc_tokens = [f"C{_w(b, scale)}" for b in DISC_WIDTHS]
    # Conditional discriminator sees the input stacked with the candidate.
    disc_spec = nt.parse_network("-".join(disc_tokens), "discriminator",
                                 conv4_norm="batch")
    g = init_weights(UNetGeneratorNet(enc_spec, dec_spec))
    d = init_weights(DiscriminatorNet(disc_spec, in_channels=6))
    g.scale = d.scale = scale
    return g, d


def parameter_count(module):
    return sum(p.numel() for p in module.parameters())

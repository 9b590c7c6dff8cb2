from .notation import (
    LayerSpec,
    NetworkSpec,
    parse_layer_token,
    parse_network,
    parse_notation,
    render_layer_token,
    render_network,
    render_notation,
)
from .networks import (
    DiscriminatorNet,
    GeneratorNet,
    ResidualBlock,
    UNetGeneratorNet,
    build_cyclegan_networks,
    build_pix2pix_networks,
    init_weights,
    parameter_count,
    pix2pix_depth,
)
from .checkpoint import (
    checkpoint_from_cyclegan,
    checkpoint_from_pix2pix,
    load_checkpoint,
    restore_networks,
    save_checkpoint,
)

__all__ = [
    "LayerSpec", "NetworkSpec",
    "parse_layer_token", "parse_network", "parse_notation",
    "render_layer_token", "render_network", "render_notation",
    "DiscriminatorNet", "GeneratorNet", "ResidualBlock", "UNetGeneratorNet",
    "build_cyclegan_networks", "build_pix2pix_networks",
    "init_weights", "parameter_count", "pix2pix_depth",
    "checkpoint_from_cyclegan", "checkpoint_from_pix2pix",
    "load_checkpoint", "restore_networks", "save_checkpoint",
]

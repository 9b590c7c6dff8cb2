"""Input validation helpers used across estimators and metric functions."""

import numpy as np

from .errors import ShapeMismatch


def check_image(image, name="image"):
    """Validate a single H x W x C image with values in [0, 1].

    Returns the image as a float32 array.
    """
    arr = np.asarray(image)
    if arr.ndim != 3:
        raise ValueError(f"{name} must be H x W x C, got shape {arr.shape}")
    if arr.shape[2] not in (1, 3):
        raise ValueError(f"{name} must have 1 or 3 channels, got {arr.shape[2]}")
    if not np.issubdtype(arr.dtype, np.floating):
        arr = arr.astype(np.float32)
    if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
        raise ValueError(f"{name} values must lie in [0, 1]")
    return np.ascontiguousarray(arr, dtype=np.float32)


def check_image_stack(images, name="images"):
    """Validate a list/array of equally shaped images; returns (N, H, W, C) float32."""
    if isinstance(images, np.ndarray) and images.ndim == 4:
        stack = images
    else:
        images = list(images)
        if not images:
            raise ValueError(f"{name} is empty")
        shapes = {np.asarray(im).shape for im in images}
        if len(shapes) != 1:
            raise ShapeMismatch(f"{name} contains mixed shapes: {sorted(shapes)}")
        stack = np.stack([np.asarray(im) for im in images])
    if stack.ndim != 4:
        raise ValueError(f"{name} must stack to N x H x W x C, got {stack.shape}")
    if stack.size and (stack.min() < 0.0 or stack.max() > 1.0):
        raise ValueError(f"{name} values must lie in [0, 1]")
    return np.ascontiguousarray(stack, dtype=np.float32)


def check_aligned(xs, ys, name_x="inputs", name_y="targets"):
    """Check two image stacks have identical length and per-image shape."""
    xs = check_image_stack(xs, name_x)
    ys = check_image_stack(ys, name_y)
    if xs.shape != ys.shape:
        raise ShapeMismatch(
            f"{name_x} shape {xs.shape} != {name_y} shape {ys.shape}")
    return xs, ys


def check_label_grid(grid, n_classes, name="labels"):
    """Validate an integer label grid with classes in [0, n_classes)."""
    from .errors import ClassOutOfRange

    arr = np.asarray(grid)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(arr == np.round(arr)):
            raise ValueError(f"{name} must contain integer class ids")
        arr = arr.astype(np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= n_classes):
        raise ClassOutOfRange(
            f"{name} contains ids outside [0, {n_classes}): "
            f"min={arr.min()}, max={arr.max()}")
    return arr.astype(np.int64)


def quantize_to_byte_grid(image):
    """Snap float image values onto the 8-bit grid k/255.

    Dataset images are stored as 8-bit PNG; generators quantize at creation
    time so that a save -> load round trip is bit-exact.
    """
    arr = np.asarray(image, dtype=np.float32)
    return (np.round(arr * 255.0).astype(np.uint8).astype(np.float32)) / np.float32(255.0)

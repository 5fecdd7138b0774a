"""
Reference preparation: edge-replicating padding and the box-mean downsampler.
"""

import numpy as np

from src.roundspec.engine.types import GrayImage
from src.roundspec.utils.errors import ParameterError

DOWNSAMPLER_NAME = "box-mean-half-even"


def _check_factor(factor):
    if not isinstance(factor, (int, np.integer)) or isinstance(factor, bool) or factor < 1:
        raise ParameterError(f"factor must be a positive integer, got {factor!r}")


def pad_to_multiple(img: GrayImage, factor: int) -> GrayImage:
    """
    Replicate the last row / column until both dimensions are multiples of `factor`.
    Returns the image unchanged when they already are.
    """
    _check_factor(factor)
    pad_h, pad_w = -img.height % factor, -img.width % factor
    if pad_h == 0 and pad_w == 0:
        return img
    return GrayImage(np.pad(img.pixels, ((0, pad_h), (0, pad_w)), mode="edge"))


def downsample(img: GrayImage, factor: int) -> GrayImage:
    """
    Box filter: each output pixel is the mean of a factor x factor block, rounded half to even.
    Dimensions that are not multiples of factor are first padded by edge replication, so the
    output is ceil(height / factor) x ceil(width / factor).
    """
    _check_factor(factor)
    padded = pad_to_multiple(img, factor).pixels.astype(np.int64)
    h, w = padded.shape[0] // factor, padded.shape[1] // factor
    sums = padded.reshape(h, factor, w, factor).sum(axis=(1, 3))
    means = sums / (factor * factor)
    return GrayImage(np.rint(means).astype(np.uint8))

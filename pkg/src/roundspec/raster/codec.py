"""
Gray image files: binary (P5) and ASCII (P2) PGM with maxval 255, and 8-bit grayscale PNG.

Anything else (16-bit, colour, palette, alpha) is rejected rather than converted.
"""

from enum import Enum
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from src.roundspec.engine.types import GrayImage
from src.roundspec.utils.errors import ParameterError, RasterFormatError
from src.roundspec.utils.general import get_logger

logger = get_logger("raster")

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
WHITESPACE = b" \t\n\r\v\f"


class RasterFormat(Enum):
    PGM_BINARY = "pgm-binary"
    PGM_ASCII = "pgm-ascii"
    PNG_GRAY8 = "png-gray8"

    @classmethod
    def from_suffix(cls, path: Path) -> "RasterFormat":
        match Path(path).suffix.lower():
            case ".pgm":
                return cls.PGM_BINARY
            case ".png":
                return cls.PNG_GRAY8
        raise ParameterError(f"cannot infer an image format from {path}; pass one of {[f.value for f in cls]}")


# -------- PGM --------
def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """
    Read `count` whitespace separated header tokens, skipping # comments.
    Returns the tokens and the offset just past the last one.
    """
    tokens, pos = [], 0
    while len(tokens) < count:
        while pos < len(data) and data[pos] in WHITESPACE:
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and data[pos] not in WHITESPACE and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise RasterFormatError("truncated PGM header")
        tokens.append(data[start:pos])
    return tokens, pos


def _decode_pgm(data: bytes) -> GrayImage:
    tokens, pos = _header_tokens(data, 4)
    magic = tokens[0]
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise RasterFormatError(f"malformed PGM header {b' '.join(tokens)!r}") from None
    if width < 1 or height < 1:
        raise RasterFormatError(f"PGM dimensions must be positive, got {width}x{height}")
    if maxval != 255:
        raise RasterFormatError(f"only 8-bit PGM (maxval 255) is supported, got maxval {maxval}")

    count = width * height
    match magic:
        case b"P5":
            payload = data[pos + 1 : pos + 1 + count]  # exactly one whitespace byte after maxval
            if len(payload) != count:
                raise RasterFormatError(f"PGM payload holds {len(payload)} bytes, expected {count}")
            pixels = np.frombuffer(payload, dtype=np.uint8).reshape(height, width)
        case b"P2":
            try:
                values = [int(t) for t in data[pos:].split()]
            except ValueError:
                raise RasterFormatError("non-numeric sample in ASCII PGM") from None
            if len(values) != count:
                raise RasterFormatError(f"ASCII PGM holds {len(values)} samples, expected {count}")
            if any(v < 0 or v > maxval for v in values):
                raise RasterFormatError("ASCII PGM sample outside [0, maxval]")
            pixels = np.array(values, dtype=np.uint8).reshape(height, width)
        case _:
            raise RasterFormatError(f"unsupported PGM magic {magic!r}")
    return GrayImage(pixels.copy())


def _encode_pgm(img: GrayImage, binary: bool) -> bytes:
    if binary:
        return f"P5\n{img.width} {img.height}\n255\n".encode("ascii") + img.pixels.tobytes()
    lines = [f"P2\n{img.width} {img.height}\n255"]
    lines += [" ".join(str(v) for v in row) for row in img.pixels.tolist()]
    return ("\n".join(lines) + "\n").encode("ascii")


# -------- PNG --------
def _decode_png(path: Path) -> GrayImage:
    try:
        with Image.open(path) as img:
            if img.mode != "L":
                raise RasterFormatError(f"only 8-bit grayscale PNG is supported, {path} has mode {img.mode}")
            return GrayImage(np.array(img, dtype=np.uint8))
    except UnidentifiedImageError:
        raise RasterFormatError(f"{path} is not a readable PNG") from None


def load(path) -> GrayImage:
    """
    Load a gray image, detecting the format from the file signature.

    Raises:
        - FileNotFoundError: the file does not exist.
        - RasterFormatError: unknown signature, malformed content or a layout other than single-channel 8-bit.
    """
    path = Path(path)
    data = path.read_bytes()
    if data.startswith(PNG_SIGNATURE):
        img = _decode_png(path)
    elif data[:2] in (b"P5", b"P2"):
        img = _decode_pgm(data)
    else:
        raise RasterFormatError(f"{path} is neither PGM (P2/P5) nor PNG")
    logger.debug(f"loaded {path} ({img.width}x{img.height})")
    return img


def save(img: GrayImage, path, format: RasterFormat | None = None):
    """Write a gray image; format defaults to the one implied by the suffix (.pgm -> binary PGM, .png -> PNG)."""
    path = Path(path)
    format = RasterFormat.from_suffix(path) if format is None else format
    match format:
        case RasterFormat.PGM_BINARY:
            path.write_bytes(_encode_pgm(img, binary=True))
        case RasterFormat.PGM_ASCII:
            path.write_bytes(_encode_pgm(img, binary=False))
        case RasterFormat.PNG_GRAY8:
            Image.fromarray(np.ascontiguousarray(img.pixels)).save(path, format="PNG")
    logger.debug(f"saved {path} as {format.value}")

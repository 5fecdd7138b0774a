"""
Value types shared by the engine, the improved-floor scheme, the metrics and the codecs.
"""

from dataclasses import dataclass, field

import numpy as np

from src.roundspec.utils.errors import ParameterError


@dataclass(frozen=True, eq=False)
class GrayImage:
    """
    Rectangular grid of 8-bit intensities, stored row-major as a (height, width) uint8 array.
    """

    pixels: np.ndarray = field(repr=False)

    def __post_init__(self):
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 2:
            raise ParameterError(f"a gray image is 2-dimensional (height, width), got shape {pixels.shape}")
        if pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ParameterError(f"a gray image needs positive width and height, got {pixels.shape[1]}x{pixels.shape[0]}")
        if pixels.dtype != np.uint8:
            if not np.issubdtype(pixels.dtype, np.integer):
                raise ParameterError(f"pixels must be integers, got dtype {pixels.dtype}")
            if pixels.min() < 0 or pixels.max() > 255:
                raise ParameterError("pixel values must lie in [0, 255]")
            pixels = pixels.astype(np.uint8)
        pixels = np.array(pixels, dtype=np.uint8, order="C", copy=True)
        pixels.setflags(write=False)
        object.__setattr__(self, "pixels", pixels)

    @classmethod
    def from_rows(cls, rows) -> "GrayImage":
        return cls(np.array(rows, dtype=np.int64))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    def __repr__(self):
        return f"GrayImage({self.width}x{self.height})"


@dataclass(frozen=True)
class SourceLocus:
    """Base low-resolution coordinate (r, c) and the fractional offsets (dr, dc) of one output pixel."""

    r: int
    c: int
    dr: float
    dc: float


@dataclass(frozen=True)
class Neighborhood:
    """The four source pixels around a sample: n1=I(r,c), n2=I(r+1,c), n3=I(r,c+1), n4=I(r+1,c+1)."""

    n1: int
    n2: int
    n3: int
    n4: int

    def __post_init__(self):
        for value in self.as_tuple():
            if not 0 <= value <= 255:
                raise ParameterError(f"neighborhood intensities must lie in [0, 255], got {self.as_tuple()}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n1, self.n2, self.n3, self.n4)


@dataclass(frozen=True)
class WeightVector:
    """The four bilinear weights, w1=(1-dr)(1-dc), w2=dr(1-dc), w3=(1-dr)dc, w4=dr*dc."""

    w1: float
    w2: float
    w3: float
    w4: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w1, self.w2, self.w3, self.w4)

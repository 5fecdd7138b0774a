"""
Bilinear upscaling with a pluggable final rounding step.

    BA_F       floor of the interpolated value
    BA_R       round half away from zero of the interpolated value
    BA_M       improved-floor sum over the four addends
    BA_M_SWAP  improved-floor sum with the N3 / N4 main quotients on swapped divisors

Output pixel (r', c') samples the source at r'/scale, c'/scale: the integer part is the base pixel and
the fractional part is the offset (no half-pixel centre shift). Neighbours beyond the last row or column
replicate the edge. The rounded value is clamped to [0, 255] afterwards.

The scalar functions and the array path in resize perform the same floating point operations in the
same order, so they agree bit for bit.
"""

import math
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from src.roundspec.engine.types import GrayImage, Neighborhood, SourceLocus, WeightVector
from src.roundspec.rounding.improved import improved_floor_sum, improved_floor_sum_swapped, make_divisors
from src.roundspec.rounding.modes import RoundingMode, apply_mode, round_array
from src.roundspec.utils.config import DEFAULT_L
from src.roundspec.utils.errors import ParameterError
from src.roundspec.utils.general import get_logger

logger = get_logger("engine")


class SchemeId(Enum):
    BA_F = "ba_f"
    BA_R = "ba_r"
    BA_M = "ba_m"
    BA_M_SWAP = "ba_m_swap"

    @classmethod
    def parse(cls, name: str) -> "SchemeId":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ParameterError(f"unknown scheme {name!r}, expected one of {[s.value for s in cls]}") from None


ALL_SCHEMES = tuple(SchemeId)


@dataclass(frozen=True)
class TimingStats:
    scheme: SchemeId
    scale: Fraction
    output_width: int
    output_height: int
    mean_seconds: float
    min_seconds: float
    max_seconds: float
    repetitions: int


def weights(dr: float, dc: float) -> WeightVector:
    """The four bilinear weights for fractional offsets dr, dc in [0, 1)."""
    for name, value in (("dr", dr), ("dc", dc)):
        if not math.isfinite(value) or not 0 <= value < 1:
            raise ParameterError(f"{name} must lie in [0, 1), got {value!r}")
    return WeightVector((1 - dr) * (1 - dc), dr * (1 - dc), (1 - dr) * dc, dr * dc)


def interpolate_exact(nb: Neighborhood, w: WeightVector) -> float:
    """N1*W1 + N2*W2 + N3*W3 + N4*W4, unrounded."""
    return nb.n1 * w.w1 + nb.n2 * w.w2 + nb.n3 * w.w3 + nb.n4 * w.w4


def interpolate_pixel(nb: Neighborhood, w: WeightVector, scheme: SchemeId, L=DEFAULT_L, clamp: bool = True) -> int:
    """
    One output intensity under the given scheme.

    Parameters:
        - nb (Neighborhood): the four source pixels.
        - w (WeightVector): their weights.
        - scheme (SchemeId): final rounding strategy.
        - L (float): perturbation for BA_M / BA_M_SWAP; ignored by BA_F / BA_R.
        - clamp (bool): clamp to [0, 255]; False exposes the raw rounded value.
    """
    match scheme:
        case SchemeId.BA_F:
            value = math.floor(interpolate_exact(nb, w))
        case SchemeId.BA_R:
            value = apply_mode(interpolate_exact(nb, w), RoundingMode.HALF_AWAY_FROM_ZERO)
        case SchemeId.BA_M:
            value = improved_floor_sum(nb.as_tuple(), make_divisors(w, L).as_tuple())
        case SchemeId.BA_M_SWAP:
            value = improved_floor_sum_swapped(nb, make_divisors(w, L))
        case _:
            raise ParameterError(f"unknown scheme {scheme!r}")
    return min(max(value, 0), 255) if clamp else value


def as_scale(scale) -> Fraction:
    """Accept an int, Fraction, float or a "p/q" string; upscaling only."""
    try:
        value = Fraction(scale)
    except (TypeError, ValueError, OverflowError):
        raise ParameterError(f"scale must be a positive rational, got {scale!r}") from None
    if value < 1:
        raise ParameterError(f"scale must be >= 1 (upscaling only), got {scale!r}")
    return value


def source_loci(out_len: int, scale) -> tuple[np.ndarray, np.ndarray]:
    """
    Base indices and fractional offsets along one axis: position i maps to i / scale.
    The split is done in exact rational arithmetic and the offset rounded to double once.
    """
    scale = as_scale(scale)
    base = np.empty(out_len, dtype=np.int64)
    offset = np.empty(out_len, dtype=np.float64)
    for i in range(out_len):
        position = Fraction(i) / scale
        base[i] = math.floor(position)
        offset[i] = float(position - base[i])
    return base, offset


def locus(r_out: int, c_out: int, scale) -> SourceLocus:
    scale = as_scale(scale)
    row, col = Fraction(r_out) / scale, Fraction(c_out) / scale
    r, c = math.floor(row), math.floor(col)
    return SourceLocus(r, c, float(row - r), float(col - c))


def neighborhood_at(img: GrayImage, r: int, c: int) -> Neighborhood:
    """I(r,c), I(r+1,c), I(r,c+1), I(r+1,c+1) with r+1 / c+1 clamped to the last row / column."""
    if not (0 <= r < img.height and 0 <= c < img.width):
        raise ParameterError(f"({r}, {c}) lies outside a {img.width}x{img.height} image")
    r1, c1 = min(r + 1, img.height - 1), min(c + 1, img.width - 1)
    p = img.pixels
    return Neighborhood(int(p[r, c]), int(p[r1, c]), int(p[r, c1]), int(p[r1, c1]))


def _round_grid(n1, n2, n3, n4, w1, w2, w3, w4, scheme: SchemeId, L) -> np.ndarray:
    """array twin of interpolate_pixel without the clamp"""
    match scheme:
        case SchemeId.BA_F:
            return np.floor(n1 * w1 + n2 * w2 + n3 * w3 + n4 * w4)
        case SchemeId.BA_R:
            return round_array(n1 * w1 + n2 * w2 + n3 * w3 + n4 * w4, RoundingMode.HALF_AWAY_FROM_ZERO)

    if not L > 0 or not math.isfinite(L):
        raise ParameterError(f"L must be a positive finite number, got {L!r}")
    a, b, c, d = 1 / (w1 + L), 1 / (w2 + L), 1 / (w3 + L), 1 / (w4 + L)
    r1, r2, r3, r4 = np.remainder(n1, a), np.remainder(n2, b), np.remainder(n3, c), np.remainder(n4, d)

    match scheme:
        case SchemeId.BA_M:
            return np.floor((n1 + r1) / a + (n2 + r2) / b + (n3 + r3) / c + (n4 + r4) / d)
        case SchemeId.BA_M_SWAP:
            total = n1 / a + n2 / b + n3 / d + n4 / c
            return np.floor(total + r1 / a + r2 / b + r3 / c + r4 / d)
    raise ParameterError(f"unknown scheme {scheme!r}")


def resize_values(img: GrayImage, scale, scheme: SchemeId, L=DEFAULT_L) -> np.ndarray:
    """Rounded but unclamped output grid (float64, integer valued)."""
    scale = as_scale(scale)
    out_h, out_w = math.floor(scale * img.height), math.floor(scale * img.width)
    rows, dr = source_loci(out_h, scale)
    cols, dc = source_loci(out_w, scale)
    rows1 = np.minimum(rows + 1, img.height - 1)
    cols1 = np.minimum(cols + 1, img.width - 1)

    p = img.pixels.astype(np.float64)
    n1 = p[rows[:, None], cols[None, :]]
    n2 = p[rows1[:, None], cols[None, :]]
    n3 = p[rows[:, None], cols1[None, :]]
    n4 = p[rows1[:, None], cols1[None, :]]

    dr, dc = dr[:, None], dc[None, :]
    w1, w2, w3, w4 = (1 - dr) * (1 - dc), dr * (1 - dc), (1 - dr) * dc, dr * dc
    return _round_grid(n1, n2, n3, n4, w1, w2, w3, w4, scheme, L)


def resize(img: GrayImage, scale, scheme: SchemeId, L=DEFAULT_L) -> GrayImage:
    """
    Upscale a gray image by a rational factor >= 1.

    Returns:
        - GrayImage of floor(scale * width) x floor(scale * height).
    """
    values = resize_values(img, scale, scheme, L)
    logger.debug(f"{scheme.value}: {img.width}x{img.height} -> {values.shape[1]}x{values.shape[0]}")
    return GrayImage(np.clip(values, 0, 255).astype(np.uint8))


def timing_stats(img: GrayImage, scale, scheme: SchemeId, repetitions: int = 1, L=DEFAULT_L) -> TimingStats:
    """
    Wall-clock the resize call alone, sequentially, `repetitions` times.
    """
    if not isinstance(repetitions, int) or repetitions < 1:
        raise ParameterError(f"repetitions must be a positive integer, got {repetitions!r}")
    scale = as_scale(scale)
    samples = []
    for _ in range(repetitions):
        start = time.perf_counter()
        out = resize(img, scale, scheme, L)
        samples.append(time.perf_counter() - start)
    return TimingStats(
        scheme=scheme,
        scale=scale,
        output_width=out.width,
        output_height=out.height,
        mean_seconds=sum(samples) / len(samples),
        min_seconds=min(samples),
        max_seconds=max(samples),
        repetitions=repetitions,
    )


def elapsed_time(img: GrayImage, scale, scheme: SchemeId, repetitions: int = 1, L=DEFAULT_L) -> float:
    """mean seconds per resize call"""
    return timing_stats(img, scale, scheme, repetitions, L).mean_seconds


def disagreement_count(a: GrayImage, b: GrayImage) -> int:
    """number of pixels at which two equally sized images differ"""
    if a.pixels.shape != b.pixels.shape:
        raise ParameterError(f"images differ in size: {a.width}x{a.height} vs {b.width}x{b.height}")
    return int(np.count_nonzero(a.pixels != b.pixels))

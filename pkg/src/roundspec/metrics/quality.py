"""
Full-reference quality metrics: MSE, SNR, PSNR and CORR2 (Pearson correlation of the flattened grids).

MSE and PSNR come from skimage.metrics; SNR and CORR2 sum through numpy on contiguous float64 vectors,
so no result depends on how the image is traversed. A zero error reports math.inf for SNR / PSNR and
the CSV writer spells it `inf`. Inside compare_schemes a metric that is undefined for the pair (a flat
image for CORR2, an all-black reference for SNR) is reported as math.nan, written `nan`.
"""

import csv
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
from skimage.metrics import mean_squared_error, peak_signal_noise_ratio

from src.roundspec.engine.bilinear import SchemeId, as_scale, disagreement_count, resize
from src.roundspec.engine.types import GrayImage
from src.roundspec.utils.config import DEFAULT_L
from src.roundspec.utils.errors import DomainError, ParameterError
from src.roundspec.utils.general import get_logger

logger = get_logger("metrics")

PEAK = 255

CSV_COLUMNS = ["scheme", "scale", "mse", "snr_db", "psnr_db", "corr2", "seconds", "disagreement_count"]


@dataclass(frozen=True)
class MetricsReport:
    scheme: SchemeId
    scale: Fraction
    mse: float
    snr_db: float
    psnr_db: float
    corr2: float
    seconds: float
    disagreement_count: int | None = None
    fsim: float | None = None  # not computed

    def as_row(self) -> list[str]:
        return [
            self.scheme.value,
            str(self.scale),
            _fmt(self.mse),
            _fmt(self.snr_db),
            _fmt(self.psnr_db),
            _fmt(self.corr2),
            _fmt(self.seconds),
            "" if self.disagreement_count is None else str(self.disagreement_count),
        ]


def _fmt(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(float(value))


def _flat(img: GrayImage) -> np.ndarray:
    return np.ascontiguousarray(img.pixels, dtype=np.float64).ravel()


def _pair(ref: GrayImage, test: GrayImage) -> tuple[np.ndarray, np.ndarray]:
    if ref.pixels.shape != test.pixels.shape:
        raise ParameterError(f"reference is {ref.width}x{ref.height} but test is {test.width}x{test.height}")
    return _flat(ref), _flat(test)


def _squared_error_sum(a: np.ndarray, b: np.ndarray) -> float:
    diff = a - b
    return float(np.sum(diff * diff))


def mse(ref: GrayImage, test: GrayImage) -> float:
    a, b = _pair(ref, test)
    return float(mean_squared_error(a, b))


def psnr(ref: GrayImage, test: GrayImage) -> float:
    """10 log10(255^2 / mse) in dB; inf when the images are identical."""
    a, b = _pair(ref, test)
    if mean_squared_error(a, b) == 0:
        return math.inf
    return float(peak_signal_noise_ratio(a, b, data_range=PEAK))


def snr(ref: GrayImage, test: GrayImage) -> float:
    """10 log10(sum ref^2 / sum (ref - test)^2) in dB, anchored on the reference."""
    a, b = _pair(ref, test)
    signal = float(np.sum(a * a))
    if signal == 0:
        raise DomainError("SNR is undefined for an all-zero reference")
    noise = _squared_error_sum(a, b)
    if noise == 0:
        return math.inf
    return 10 * math.log10(signal / noise)


def corr2(ref: GrayImage, test: GrayImage) -> float:
    """Pearson correlation over all pixels."""
    a, b = _pair(ref, test)
    a = a - np.sum(a) / a.size
    b = b - np.sum(b) / b.size
    var_a, var_b = float(np.sum(a * a)), float(np.sum(b * b))
    if var_a == 0 or var_b == 0:
        raise DomainError("correlation is undefined for a constant image")
    return float(np.sum(a * b)) / math.sqrt(var_a * var_b)


def _or_nan(metric, ref: GrayImage, test: GrayImage, label: str) -> float:
    try:
        return metric(ref, test)
    except DomainError as error:
        logger.warning(f"{label}: {metric.__name__} undefined, reported as nan ({error})")
        return math.nan


@dataclass(frozen=True)
class SchemeComparison:
    reports: list
    disagreement_count: int | None
    images: dict = field(default_factory=dict, repr=False)


def compare_schemes(ref: GrayImage, lowres: GrayImage, scale, schemes, L=DEFAULT_L) -> SchemeComparison:
    """
    Upscale `lowres` once per scheme and score each result against `ref`.

    Parameters:
        - ref (GrayImage): the reference, exactly floor(scale * lowres) in both dimensions.
        - lowres (GrayImage): the image to upscale.
        - scale: upscaling factor.
        - schemes (list[SchemeId]): one report per entry, in order.
        - L (float): perturbation for the modulo schemes.

    Returns:
        - SchemeComparison: the reports and the number of pixels where BA_F and BA_R disagree
          (None when the scheme list is empty), plus the upscaled image per scheme. The count is stored
          on every report as well.
    """
    scale = as_scale(scale)
    expected = (math.floor(scale * lowres.height), math.floor(scale * lowres.width))
    if ref.pixels.shape != expected:
        raise ParameterError(f"reference is {ref.width}x{ref.height}, upscaled image will be {expected[1]}x{expected[0]}")
    schemes = list(schemes)
    if not schemes:
        return SchemeComparison([], None)

    outputs, seconds = {}, {}
    for scheme in schemes:
        start = time.perf_counter()
        outputs[scheme] = resize(lowres, scale, scheme, L)
        seconds[scheme] = time.perf_counter() - start
    for scheme in (SchemeId.BA_F, SchemeId.BA_R):
        if scheme not in outputs:
            outputs[scheme] = resize(lowres, scale, scheme, L)
    disagreements = disagreement_count(outputs[SchemeId.BA_F], outputs[SchemeId.BA_R])

    reports = []
    for scheme in schemes:
        test = outputs[scheme]
        label = f"x{scale} {scheme.value}"
        reports.append(
            MetricsReport(
                scheme=scheme,
                scale=scale,
                mse=mse(ref, test),
                snr_db=_or_nan(snr, ref, test, label),
                psnr_db=psnr(ref, test),
                corr2=_or_nan(corr2, ref, test, label),
                seconds=seconds[scheme],
                disagreement_count=disagreements,
            )
        )
        logger.debug(f"{label}: psnr {reports[-1].psnr_db:.4f} dB, corr2 {reports[-1].corr2:.6f}")
    return SchemeComparison(reports, disagreements, {scheme: outputs[scheme] for scheme in schemes})


def metrics_to_csv(reports, path: Path, header_comments=()):
    """
    One row per report with columns CSV_COLUMNS; each header comment becomes a leading `# ...` line.
    """
    with Path(path).open("w", newline="", encoding="utf-8") as f:
        for comment in header_comments:
            f.write(f"# {comment}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for report in reports:
            writer.writerow(report.as_row())


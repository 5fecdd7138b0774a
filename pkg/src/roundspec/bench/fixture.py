"""
The bundled 128x128 test image and the regression goldens computed from it.

The image is generated in integer arithmetic (gradient, a fine texture, a ring, a hard-edged square
and a checkerboard patch) so it is identical on every platform and needs no file.
"""

import csv
from pathlib import Path

import numpy as np

from src.roundspec.engine.bilinear import ALL_SCHEMES
from src.roundspec.engine.types import GrayImage
from src.roundspec.metrics.quality import CSV_COLUMNS, compare_schemes
from src.roundspec.raster.resample import downsample, pad_to_multiple
from src.roundspec.utils.config import DEFAULT_L
from src.roundspec.utils.general import get_logger

logger = get_logger("fixture")

FIXTURE_NAME = "synthetic-128"
GOLDENS_DIR = Path("assets", "goldens")
GOLDEN_METRICS = "fixture_metrics.csv"
GOLDEN_COLUMNS = [name for name in CSV_COLUMNS if name != "seconds"]


def synthetic_fixture(size: int = 128) -> GrayImage:
    y, x = np.mgrid[0:size, 0:size].astype(np.int64)
    span = 2 * (size - 1)

    pixels = (x + y) * 255 // span  # diagonal gradient
    pixels = pixels + (x * 73 + y * 151) % 17 - 8  # texture

    # ring
    centre = size // 2
    d2 = (x - centre) ** 2 + (y - centre) ** 2
    inner, outer = (size * 3 // 16) ** 2, (size * 4 // 16) ** 2
    pixels = np.where((d2 >= inner) & (d2 <= outer), 230, pixels)

    # hard-edged dark square
    lo, hi = size // 8, size * 3 // 8
    square = (x >= lo) & (x < hi) & (y >= size * 5 // 8) & (y < size * 7 // 8)
    pixels = np.where(square, 20, pixels)

    # checkerboard, 4px cells
    lo, hi = size * 5 // 8, size * 7 // 8
    patch = (x >= lo) & (x < hi) & (y >= lo) & (y < hi)
    pixels = np.where(patch, ((x // 4 + y // 4) % 2) * 200 + 30, pixels)

    return GrayImage(np.clip(pixels, 0, 255))


def fixture_reports(scales=(2, 3, 4, 5), schemes=ALL_SCHEMES, L=DEFAULT_L) -> list:
    """The benchmark pipeline on the fixture: one MetricsReport per scale x scheme."""
    image = synthetic_fixture()
    reports = []
    for scale in scales:
        reference = pad_to_multiple(image, scale)
        lowres = downsample(reference, scale)
        reports += compare_schemes(reference, lowres, scale, schemes, L).reports
    return reports


def golden_rows(reports) -> list[list[str]]:
    """report rows without the timing column"""
    keep = [i for i, name in enumerate(CSV_COLUMNS) if name != "seconds"]
    return [[report.as_row()[i] for i in keep] for report in reports]


def seed_goldens(out_dir: Path = GOLDENS_DIR) -> Path:
    """Run the fixture pipeline at x2..x5 over all four schemes and freeze the metrics."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / GOLDEN_METRICS
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(GOLDEN_COLUMNS)
        writer.writerows(golden_rows(fixture_reports()))
    logger.info(f"wrote goldens to {path}")
    return path


def read_goldens(path: Path) -> list[dict]:
    with Path(path).open(newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))

"""
Benchmark harness: downsample a reference, upscale it back with every scheme at each scale, and write
metrics.csv, timing.csv and the interpolated images.

Usage:
  python -m src.roundspec.bench --input lena.pgm --scales 2,3,4,5 --out media/bench
  python -m src.roundspec.bench --tables --out media/tables
  python -m src.roundspec.bench --seed-goldens
"""

import argparse
import csv
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from src.roundspec import __version__
from src.roundspec.bench.fixture import FIXTURE_NAME, GOLDENS_DIR, seed_goldens, synthetic_fixture
from src.roundspec.bench.tables import emit_tables
from src.roundspec.engine.bilinear import SchemeId, timing_stats
from src.roundspec.metrics.quality import compare_schemes, metrics_to_csv
from src.roundspec.raster.codec import load, save
from src.roundspec.raster.resample import DOWNSAMPLER_NAME, downsample, pad_to_multiple
from src.roundspec.utils.config import DEFAULT_L, load_config
from src.roundspec.utils.errors import ParameterError, RoundspecError
from src.roundspec.utils.general import banner, configure_logging, get_logger

logger = get_logger("bench")

TIMING_COLUMNS = ["scheme", "scale", "output_width", "output_height", "mean_seconds", "min_seconds", "max_seconds", "repetitions"]


@dataclass
class BenchmarkConfig:
    input: Path | None = None  # None runs on the bundled fixture
    scales: list = field(default_factory=lambda: [2, 3, 4, 5])
    schemes: list = field(default_factory=lambda: list(SchemeId))
    L: float = DEFAULT_L
    repetitions: int = 10
    out: Path = Path("media", "bench")

    def __post_init__(self):
        self.schemes = [s if isinstance(s, SchemeId) else SchemeId.parse(s) for s in self.schemes]
        self.out = Path(self.out)
        self.input = None if self.input is None else Path(self.input)
        if not self.scales or any(not isinstance(s, int) or isinstance(s, bool) or s < 2 for s in self.scales):
            raise ParameterError(f"scales must be integers >= 2, got {self.scales}")
        if not isinstance(self.repetitions, int) or self.repetitions < 1:
            raise ParameterError(f"repetitions must be a positive integer, got {self.repetitions!r}")
        if not isinstance(self.L, (int, float)) or not self.L > 0 or not math.isfinite(self.L):
            raise ParameterError(f"L must be a positive finite number, got {self.L!r}")

    @classmethod
    def from_config(cls, config: dict, **overrides) -> "BenchmarkConfig":
        """Build from the [benchmark] table of load_config(); overrides that are None are ignored."""
        values = dict(config["benchmark"])
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


def _write_csv(path: Path, header_comments, columns, rows):
    with path.open("w", newline="", encoding="utf-8") as f:
        for comment in header_comments:
            f.write(f"# {comment}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)


def run_benchmark(cfg: BenchmarkConfig) -> int:
    """
    For each scale s: reference = the input padded to a multiple of s, lowres = downsample(reference, s),
    then upscale lowres by s with each scheme and score it against the reference.

    Returns:
        - int: 0; failures raise RoundspecError / OSError.
    """
    image = synthetic_fixture() if cfg.input is None else load(cfg.input)
    source = FIXTURE_NAME if cfg.input is None else cfg.input.name
    cfg.out.mkdir(parents=True, exist_ok=True)

    warnings, reports, timings = [], [], []
    for scale in cfg.scales:
        banner(f"scale x{scale}")
        reference = pad_to_multiple(image, scale)
        if reference is not image:
            message = f"warning=x{scale}: {image.width}x{image.height} is not divisible by {scale}, padded by edge replication to {reference.width}x{reference.height}"
            warnings.append(message)
            logger.warning(message)
        lowres = downsample(reference, scale)

        comparison = compare_schemes(reference, lowres, scale, cfg.schemes, cfg.L)
        reports += comparison.reports
        for scheme, upscaled in comparison.images.items():
            save(upscaled, cfg.out / f"{scheme.value}_x{scale}.pgm")
        logger.info(f"x{scale}: BA_F and BA_R disagree on {comparison.disagreement_count} pixels")

        for scheme in cfg.schemes:
            stats = timing_stats(lowres, scale, scheme, cfg.repetitions, cfg.L)
            timings.append(stats)
            logger.info(f"x{scale} {scheme.value}: {stats.mean_seconds:.6f}s mean over {stats.repetitions}")

    header = [f"tool=roundspec {__version__}", f"input={source}", f"L={cfg.L!r}", f"downsampler={DOWNSAMPLER_NAME}", *warnings]
    metrics_to_csv(reports, cfg.out / "metrics.csv", header)
    timing_rows = [
        [t.scheme.value, str(t.scale), t.output_width, t.output_height, repr(t.mean_seconds), repr(t.min_seconds), repr(t.max_seconds), t.repetitions]
        for t in timings
    ]
    _write_csv(cfg.out / "timing.csv", header, TIMING_COLUMNS, timing_rows)
    logger.info(f"wrote {len(reports)} metric rows and {len(timings)} timing rows to {cfg.out}")
    return 0


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _name_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="roundspec-bench", description="Bilinear upscaling benchmark over rounding schemes.")
    p.add_argument("--config", type=Path, default=None, help="toml config (default ./CONFIG.toml)")
    p.add_argument("--input", type=Path, default=None, help="PGM/PNG reference image (default: bundled 128x128 fixture)")
    p.add_argument("--scales", type=_int_list, default=None, help="e.g. 2,3,4,5")
    p.add_argument("--schemes", type=_name_list, default=None, help="e.g. ba_f,ba_r,ba_m,ba_m_swap")
    p.add_argument("--L", dest="L", type=float, default=None, help="perturbation for the modulo schemes")
    p.add_argument("--repetitions", type=int, default=None)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--tables", action="store_true", help="only write the conformance and round-off error tables")
    p.add_argument("--seed-goldens", action="store_true", help="write the fixture regression goldens")
    p.add_argument("--log-level", default=None, help="DEBUG / INFO / WARNING / ERROR")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        configure_logging(args.log_level or config["logging"]["level"])

        if args.tables:
            emit_tables(args.out or Path(config["benchmark"]["out"]))
            return 0
        if args.seed_goldens:
            seed_goldens(args.out or GOLDENS_DIR)
            return 0

        cfg = BenchmarkConfig.from_config(
            config,
            input=args.input,
            scales=args.scales,
            schemes=args.schemes,
            L=args.L,
            repetitions=args.repetitions,
            out=args.out,
        )
        return run_benchmark(cfg)
    except (RoundspecError, OSError) as error:
        print(f"error kind={type(error).__name__} message={error}", file=sys.stderr)
        return 1

"""Bilinear upscaling with pluggable rounding schemes, a round-off analyzer and a benchmark harness."""

__version__ = "0.1.0"

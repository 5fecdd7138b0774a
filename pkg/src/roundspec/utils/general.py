import logging

from rich.console import Console
from rich.logging import RichHandler

from src.roundspec.utils.errors import ParameterError

console = Console(stderr=True)

_configured = False


def banner(content: str, symbol="-"):
    """
    Print a banner to the terminal to screen width
    e.g., ---- scale x2 ----
    """
    console.rule(content.strip(), characters=symbol)


def configure_logging(level: str = "WARNING"):
    """
    Attach a single rich handler to the package root logger.
    Calling it again only changes the level.
    """
    global _configured
    root = logging.getLogger("roundspec")
    if not _configured:
        handler = RichHandler(console=console, show_path=False, rich_tracebacks=True)
        handler.setFormatter(logging.Formatter("%(message)s"))
        root.addHandler(handler)
        root.propagate = False
        _configured = True
    numeric = logging.getLevelName(str(level).upper())
    if not isinstance(numeric, int):
        raise ParameterError(f"unknown log level {level!r}")
    root.setLevel(numeric)
    return root


def get_logger(name: str) -> logging.Logger:
    """Loggers live under the `roundspec` namespace, e.g. get_logger("engine") -> roundspec.engine"""
    return logging.getLogger(f"roundspec.{name}")

"""
Loads CONFIG.toml and merges it over the built-in defaults.
"""

from copy import deepcopy
from pathlib import Path

import toml

from src.roundspec.utils.errors import ParameterError

DEFAULT_L = 1e-9

DEFAULTS = {
    "benchmark": {
        "scales": [2, 3, 4, 5],
        "schemes": ["ba_f", "ba_r", "ba_m", "ba_m_swap"],
        "L": DEFAULT_L,
        "repetitions": 10,
        "out": "media/bench",
    },
    "logging": {"level": "INFO"},
}

CONFIG_PATH = Path("CONFIG.toml")


def load_config(path: Path | None = None) -> dict:
    """
    Read a toml config and overlay it on DEFAULTS.

    Parameters:
        - path (Path, optional): the config file; defaults to ./CONFIG.toml. A missing file is not an error.

    Returns:
        - dict: {"benchmark": {...}, "logging": {...}} with every default key present.
    """
    config = deepcopy(DEFAULTS)
    path = CONFIG_PATH if path is None else Path(path)
    if not path.exists():
        return config

    loaded = toml.load(path)
    for section, values in loaded.items():
        if section not in config:
            raise ParameterError(f"unknown config section [{section}] in {path}")
        for key, value in values.items():
            if key not in config[section]:
                raise ParameterError(f"unknown config key {section}.{key} in {path}")
            config[section][key] = value
    return config

"""Run configuration: INI file sections per model, overridden by CLI flags."""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument

MODELS = ("ho", "cs", "gue", "kicked-top", "explicit")

DEFAULTS = {
    "thermal": {"beta": 1.0, "hbar": 1.0, "d": 1},
    "grid": {"start": 0.0, "stop": 10.0, "count": 501, "spacing": "linear"},
    "ho": {"omega": 1.0, "levels": 0},
    "cs": {"omega": 1.0, "particles": 4},
    "gue": {"dim": 30, "sigma": 1.0, "nav": 100, "mode": "exact"},
    "kicked-top": {"spin": 30.0, "p": "1.1,1,1", "k": "4,0,10", "nav": 30, "window_frac": 0.05,
                   "tau_p": 1.0, "sampling": "random", "branch": "positive"},
    "explicit": {"energies": ""},
}


@dataclass(frozen=True)
class TimeGrid:
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.count < 2:
            raise InvalidArgument("time grid needs count >= 2")
        if self.spacing not in ("linear", "log"):
            raise InvalidArgument(f"unknown grid spacing {self.spacing!r}")
        if not self.stop > self.start:
            raise InvalidArgument("time grid needs stop > start")
        if self.spacing == "log" and not self.start > 0:
            raise InvalidArgument("log-spaced grid needs start > 0")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass
class RunConfig:
    model: str
    thermal: dict
    block: dict
    grid: TimeGrid
    seed: int = 0
    out_dir: str = "out"
    fmt: str = "both"
    extra: dict = field(default_factory=dict)


def _coerce(value, like):
    if isinstance(like, bool):
        return str(value).lower() in ("1", "true", "yes", "on")
    if isinstance(like, int):
        return int(value)
    if isinstance(like, float):
        return float(value)
    return str(value)


def read_config_file(path) -> dict:
    """Parse an INI file into ``{section: {key: str}}``; unknown sections are rejected."""
    cp = configparser.ConfigParser()
    if not cp.read(path):
        raise InvalidArgument(f"cannot read config file {path}")
    out = {}
    allowed = set(DEFAULTS) | {"run"}
    for sec in cp.sections():
        if sec not in allowed:
            raise InvalidArgument(f"unknown config section [{sec}]")
        out[sec] = dict(cp[sec])
    return out


def merge(section: str, file_values: dict, flags: dict) -> dict:
    """Defaults, then file, then flags (flags that are ``None`` are unset)."""
    base = dict(DEFAULTS.get(section, {}))
    for source in (file_values.get(section, {}), flags):
        for key, val in source.items():
            key = key.replace("-", "_")
            if val is None:
                continue
            if key in base:
                base[key] = _coerce(val, base[key])
            elif source is not flags:
                raise InvalidArgument(f"unknown key {key!r} in section [{section}]")
    return base


def parse_vector(text, n=3):
    try:
        vals = tuple(float(x) for x in str(text).split(","))
    except ValueError:
        raise InvalidArgument(f"cannot parse vector {text!r}") from None
    if len(vals) != n:
        raise InvalidArgument(f"expected {n} comma-separated numbers, got {text!r}")
    return vals


def parse_float_list(text):
    text = str(text).strip()
    if not text:
        return []
    try:
        return [float(x) for x in text.replace(";", ",").split(",") if x.strip()]
    except ValueError:
        raise InvalidArgument(f"cannot parse number list {text!r}") from None

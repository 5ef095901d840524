"""Bundled data files, threshold config, and environment variable names.

Thresholds, the shortener list, the public-suffix snapshot and the default
column map ship inside the package under ``nophish/data``. They are read once
and cached; the loaded structures are immutable from then on, so concurrent
scans can share them freely.
"""

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import ConfigError

# environment variable names honoured across the CLI and the service
ENV_RANK_FILE = "NOPHISH_RANK_FILE"
ENV_REPORT_FILE = "NOPHISH_REPORT_FILE"
ENV_FIXTURES_DIR = "NOPHISH_FIXTURES_DIR"
ENV_PORT = "NOPHISH_PORT"
ENV_MODEL = "NOPHISH_MODEL"
ENV_POLICY_WARN = "NOPHISH_POLICY_WARN"


def _data_text(name: str) -> str:
    return resources.files("nophish.data").joinpath(name).read_text(encoding="utf-8")


@dataclass(frozen=True)
class Thresholds:
    """Cut points for the threshold-driven features (one config structure)."""

    url_short_max: int = 53
    url_long_min: int = 76
    request_low: float = 0.22
    request_high: float = 0.61
    anchor_low: float = 0.31
    anchor_high: float = 0.67
    tags_low: float = 0.17
    tags_high: float = 0.81
    rank_popular_max: int = 100000
    registration_short_max_days: int = 365
    age_mature_min_days: int = 183

    @staticmethod
    def from_mapping(raw: dict) -> "Thresholds":
        try:
            return Thresholds(
                url_short_max=int(raw["url_length"]["short_max"]),
                url_long_min=int(raw["url_length"]["long_min"]),
                request_low=float(raw["request_url_ratio"]["low"]),
                request_high=float(raw["request_url_ratio"]["high"]),
                anchor_low=float(raw["anchor_ratio"]["low"]),
                anchor_high=float(raw["anchor_ratio"]["high"]),
                tags_low=float(raw["meta_script_link_ratio"]["low"]),
                tags_high=float(raw["meta_script_link_ratio"]["high"]),
                rank_popular_max=int(raw["traffic_rank"]["popular_max"]),
                registration_short_max_days=int(raw["registration_length"]["short_max_days"]),
                age_mature_min_days=int(raw["domain_age"]["mature_min_days"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad thresholds config: {exc}") from exc


@lru_cache(maxsize=1)
def default_thresholds() -> Thresholds:
    return Thresholds.from_mapping(json.loads(_data_text("thresholds.json")))


def load_thresholds(path: str) -> Thresholds:
    with open(path, encoding="utf-8") as f:
        return Thresholds.from_mapping(json.load(f))


@lru_cache(maxsize=1)
def shortener_domains() -> frozenset:
    domains = set()
    for line in _data_text("shorteners.txt").splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            domains.add(line)
    return frozenset(domains)


@lru_cache(maxsize=1)
def default_column_map() -> dict:
    raw = json.loads(_data_text("column_map.json"))
    return {"label_column": raw["label_column"], "features": dict(raw["features"])}


def load_column_map(path: str) -> dict:
    with open(path, encoding="utf-8") as f:
        raw = json.load(f)
    if "features" not in raw or "label_column" not in raw:
        raise ConfigError(f"{path}: column map needs 'features' and 'label_column' keys")
    return {"label_column": raw["label_column"], "features": dict(raw["features"])}


def public_suffix_lines():
    return _data_text("public_suffix_list.dat").splitlines()


def env_or(name: str, fallback=None):
    value = os.environ.get(name)
    return value if value not in (None, "") else fallback

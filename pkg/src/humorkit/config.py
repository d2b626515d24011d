"""Run configuration: a key=value text file plus command-line overrides.

Precedence: --set flags, then the HUMORKIT_DATA_DIR environment variable
(for data_dir only), then the config file, then built-in defaults. Relative
paths resolve against the config file's directory. The fully resolved
configuration is written to <output_dir>/run-config.resolved so every run
leaves a reproducible record.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .features import default_data_root

_STR_KEYS = {
    "tweets": "",
    "annotations": "",
    "output_dir": "out",
    "data_dir": "",  # empty = package data (or HUMORKIT_DATA_DIR)
    "features": "default",  # "default" or comma-separated feature names
    "oov_cache": "",
    "model": "svm",
    "serve_host": "127.0.0.1",
    "serve_pool": "humorous",  # humorous | all
    "ui_dir": "",
}

_INT_KEYS = {
    "filter_max_gap_ms": 2000,
    "filter_min_run": 5,
    "seed": None,  # mandatory, no default
    "svm_epochs": 100,
    "knn_k": 5,
    "dt_min_leaf": 2,
    "serve_port": 8765,
    "workers": 1,
}

_FLOAT_KEYS = {
    "pos_threshold": 0.6,
    "neg_threshold": 0.3,
    "train_fraction": 0.8,
    "svm_lambda": 0.1,
    "mnb_alpha": 1.0,
}

_BOOL_KEYS = {
    "include_humorous_negatives": False,
}

_OPT_INT_KEYS = {
    "dt_max_depth": 10,  # "none" = unbounded
}

KNOWN_KEYS = set(_STR_KEYS) | set(_INT_KEYS) | set(_FLOAT_KEYS) | set(_BOOL_KEYS) | set(_OPT_INT_KEYS)

MODEL_KINDS = ("svm", "knn", "mnb", "gnb", "dt")


def _parse_bool(key, raw):
    low = raw.lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {raw!r}")


def parse_config_text(text: str, source: str = "<config>") -> dict:
    values = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{line_no}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{source}:{line_no}: unknown key {key!r}")
        values[key] = value
    return values


@dataclass
class RunConfig:
    raw: dict  # typed values by key
    base_dir: Path  # directory relative paths resolve against

    @classmethod
    def load(cls, config_path: str | None, overrides: list[str]) -> "RunConfig":
        text_values: dict[str, str] = {}
        base_dir = Path.cwd()
        if config_path:
            path = Path(config_path)
            if not path.exists():
                raise ConfigError(f"config file not found: {path}")
            text_values = parse_config_text(path.read_text(encoding="utf-8"), str(path))
            base_dir = path.resolve().parent
        for item in overrides:
            if "=" not in item:
                raise ConfigError(f"--set needs key=value, got {item!r}")
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in KNOWN_KEYS:
                raise ConfigError(f"--set: unknown key {key!r}")
            text_values[key] = value.strip()

        env_data = os.environ.get("HUMORKIT_DATA_DIR")
        if env_data and "data_dir" not in {k for k in overrides_keys(overrides)}:
            # env overrides the config file but not explicit flags
            text_values["data_dir"] = env_data

        typed: dict = {}
        for key, default in _STR_KEYS.items():
            typed[key] = text_values.get(key, default)
        for key, default in _INT_KEYS.items():
            typed[key] = int(text_values[key]) if key in text_values else default
        for key, default in _FLOAT_KEYS.items():
            typed[key] = float(text_values[key]) if key in text_values else default
        for key, default in _BOOL_KEYS.items():
            typed[key] = _parse_bool(key, text_values[key]) if key in text_values else default
        for key, default in _OPT_INT_KEYS.items():
            if key in text_values:
                raw = text_values[key].lower()
                typed[key] = None if raw == "none" else int(raw)
            else:
                typed[key] = default

        if typed["seed"] is None:
            raise ConfigError("seed must be set (config or --set seed=N); there is no default")
        if typed["model"] not in MODEL_KINDS:
            raise ConfigError(f"model must be one of {MODEL_KINDS}, got {typed['model']!r}")
        if not 0 <= typed["neg_threshold"] < typed["pos_threshold"] <= 1:
            raise ConfigError("need 0 <= neg_threshold < pos_threshold <= 1")
        return cls(typed, base_dir)

    # --- typed accessors ---

    def path(self, key: str) -> Path:
        value = self.raw[key]
        if not value:
            raise ConfigError(f"{key} is not set")
        p = Path(value)
        return p if p.is_absolute() else self.base_dir / p

    def optional_path(self, key: str) -> Path | None:
        return self.path(key) if self.raw[key] else None

    @property
    def output_dir(self) -> Path:
        return self.path("output_dir")

    @property
    def data_dir(self) -> Path:
        if self.raw["data_dir"]:
            return self.path("data_dir")
        return default_data_root()

    @property
    def seed(self) -> int:
        return self.raw["seed"]

    def enabled_features(self) -> tuple[str, ...]:
        from .features import DEFAULT_ENABLED

        listed = self.raw["features"].strip()
        if listed in ("", "default"):
            return DEFAULT_ENABLED
        return tuple(name.strip() for name in listed.split(",") if name.strip())

    def feature_config(self):
        from .features import FeatureConfig

        cache = self.optional_path("oov_cache")
        return FeatureConfig(
            enabled=self.enabled_features(),
            data_root=self.data_dir,
            oov_cache_path=cache,
        )

    def aggregation_config(self):
        from .corpus import AggregationConfig

        return AggregationConfig(
            pos_threshold=self.raw["pos_threshold"],
            neg_threshold=self.raw["neg_threshold"],
            include_humorous_account_negatives=self.raw["include_humorous_negatives"],
        )

    def resolved_text(self) -> str:
        lines = []
        for key in sorted(KNOWN_KEYS):
            value = self.raw[key]
            if value is None:
                value = "none"
            elif isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"{key} = {value}")
        return "\n".join(lines) + "\n"


def overrides_keys(overrides: list[str]):
    for item in overrides:
        if "=" in item:
            yield item.partition("=")[0].strip()


def atomic_write(path: Path, data: str) -> None:
    """Write via a temp file in the same directory; no partial files."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(data)
    os.replace(tmp, path)

"""Analysis configuration: one YAML file, every default echoed back."""

from __future__ import annotations

import secrets
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any

import yaml

from .corpus import MONTH_RE
from .econ.transforms import SeriesTransform


class ConfigError(ValueError):
    pass


DEFAULT_SUBPERIODS = {
    "pre": ["2012-05", "2016-06"],
    "transition": ["2016-07", "2020-01"],
    "post": ["2020-02", "2025-01"],
}


@dataclass
class LagConfig:
    fixed: int | None = None
    criterion: str = "aic"
    p_max: int = 6


@dataclass
class BootstrapConfig:
    reps: int = 999
    level: float = 90.0
    seed: int | None = None
    workers: int = 1


@dataclass
class AnalysisConfig:
    corpus_dir: str | None = None
    lexicon_path: str | None = None
    radius: int = 10
    index_path: str | None = None
    panel_path: str | None = None
    index_variable: str = "BRUI"
    index_column: str = "brui"
    transform_spec: dict[str, dict[str, Any]] = field(default_factory=dict)
    variable_order: list[str] | None = None
    lag: LagConfig = field(default_factory=LagConfig)
    horizon: int = 10
    bootstrap: BootstrapConfig = field(default_factory=BootstrapConfig)
    subperiods: dict[str, list[str]] = field(default_factory=lambda: {k: list(v) for k, v in DEFAULT_SUBPERIODS.items()})

    def validate(self) -> None:
        if self.radius < 1:
            raise ConfigError(f"radius must be >= 1, got {self.radius}")
        if self.horizon < 1:
            raise ConfigError(f"horizon must be >= 1, got {self.horizon}")
        if self.bootstrap.reps < 1:
            raise ConfigError(f"bootstrap.reps must be >= 1, got {self.bootstrap.reps}")
        if not 0 < self.bootstrap.level < 100:
            raise ConfigError(f"bootstrap.level must lie in (0, 100), got {self.bootstrap.level}")
        if self.lag.fixed is not None and self.lag.fixed < 1:
            raise ConfigError(f"lag.fixed must be >= 1, got {self.lag.fixed}")
        if self.lag.p_max < 1:
            raise ConfigError(f"lag.p_max must be >= 1, got {self.lag.p_max}")
        if self.lag.criterion.lower() not in ("aic", "bic", "hq"):
            raise ConfigError(f"lag.criterion must be aic, bic or hq, got {self.lag.criterion!r}")
        for name, rng in self.subperiods.items():
            if (not isinstance(rng, (list, tuple)) or len(rng) != 2
                    or not all(isinstance(m, str) and MONTH_RE.match(m) for m in rng)):
                raise ConfigError(f"subperiod {name!r} must be [YYYY-MM, YYYY-MM], got {rng!r}")
            if rng[0] > rng[1]:
                raise ConfigError(f"subperiod {name!r} starts after it ends")
            if name == "full":
                raise ConfigError("subperiod name 'full' is reserved for the whole sample")
        for name, spec in self.transform_spec.items():
            self.series_transform(name)

    def series_transform(self, name: str) -> SeriesTransform:
        spec = self.transform_spec[name]
        extra = set(spec) - {"log", "diff"}
        if extra:
            raise ConfigError(f"transform_spec.{name}: unknown keys {sorted(extra)}")
        try:
            return SeriesTransform(log=bool(spec.get("log", False)), diff=int(spec.get("diff", 1)))
        except ValueError as exc:
            raise ConfigError(f"transform_spec.{name}: {exc}") from None

    def resolved_seed(self) -> int:
        """Fill in a recorded random seed when none was configured."""
        if self.bootstrap.seed is None:
            self.bootstrap.seed = secrets.randbelow(2**32)
        return self.bootstrap.seed

    def to_dict(self) -> dict:
        return asdict(self)


def _build(cls, data: dict, where: str):
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"{where} must be a mapping")
    known = {f.name: f for f in fields(cls)}
    unknown = set(data) - set(known)
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(sorted(unknown))}")
    kwargs = {}
    for key, value in data.items():
        if key == "lag":
            value = _build(LagConfig, value, "lag")
        elif key == "bootstrap":
            value = _build(BootstrapConfig, value, "bootstrap")
        kwargs[key] = value
    return cls(**kwargs)


def config_from_dict(data: dict | None) -> AnalysisConfig:
    try:
        cfg = _build(AnalysisConfig, data or {}, "config")
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    cfg.validate()
    return cfg


def load_config(path: str | Path | None) -> AnalysisConfig:
    if path is None:
        return config_from_dict({})
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from None
    cfg = config_from_dict(data)
    # relative paths in the file are relative to the file
    for attr in ("corpus_dir", "lexicon_path", "index_path", "panel_path"):
        value = getattr(cfg, attr)
        if value is not None and not Path(value).is_absolute():
            setattr(cfg, attr, str((path.parent / value).resolve()))
    return cfg


def dump_config(cfg: AnalysisConfig) -> str:
    return yaml.safe_dump(cfg.to_dict(), sort_keys=False)

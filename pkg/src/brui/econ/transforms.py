"""Macro panel container, CSV reading and log/difference transforms."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
import pandas as pd

from ..corpus import MONTH_RE

# Cholesky ordering: the index first, then the macro variables as tabulated.
DEFAULT_ORDER = ("BRUI", "GDP", "CPI", "PPI", "X", "M", "GBP_EUR", "GBP_USD", "EMP", "UEMP")
LEVEL_VARIABLES = frozenset({"GBP_EUR", "GBP_USD", "UEMP"})


class PanelError(ValueError):
    pass


@dataclass(frozen=True)
class SeriesTransform:
    log: bool = False
    diff: int = 1

    def __post_init__(self):
        if self.diff < 0:
            raise PanelError(f"difference order must be >= 0, got {self.diff}")


def default_transform(name: str) -> SeriesTransform:
    """Natural log then first difference, except for rates and exchange rates.

    Variables outside the default ordering are differenced but not logged.
    """
    if name in DEFAULT_ORDER:
        return SeriesTransform(log=name not in LEVEL_VARIABLES, diff=1)
    return SeriesTransform(log=False, diff=1)


@dataclass
class MacroPanel:
    months: list[str]
    names: list[str]
    values: np.ndarray
    transforms: dict[str, SeriesTransform] = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2 or self.values.shape != (len(self.months), len(self.names)):
            raise PanelError(
                f"panel values shape {self.values.shape} does not match "
                f"{len(self.months)} months x {len(self.names)} series"
            )
        if len(set(self.names)) != len(self.names):
            raise PanelError("duplicate series names in panel")
        for m in self.months:
            if not MONTH_RE.match(m):
                raise PanelError(f"bad month label {m!r}")
        if any(b <= a for a, b in zip(self.months, self.months[1:])):
            raise PanelError("panel months must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise PanelError("panel has missing or non-finite values")

    @property
    def nobs(self) -> int:
        return len(self.months)

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.names.index(name)]

    def transform_for(self, name: str) -> SeriesTransform:
        return self.transforms.get(name, default_transform(name))

    def reorder(self, order: Sequence[str]) -> "MacroPanel":
        missing = [n for n in order if n not in self.names]
        if missing:
            raise PanelError(f"variables not in panel: {', '.join(missing)}")
        idx = [self.names.index(n) for n in order]
        return replace(self, names=list(order), values=self.values[:, idx])

    def between(self, start: str | None = None, end: str | None = None) -> "MacroPanel":
        keep = [i for i, m in enumerate(self.months)
                if (start is None or m >= start) and (end is None or m <= end)]
        return replace(self, months=[self.months[i] for i in keep], values=self.values[keep])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.values, index=pd.Index(self.months, name="month"), columns=self.names)

    @classmethod
    def from_frame(cls, frame: pd.DataFrame, transforms: Mapping[str, SeriesTransform] | None = None) -> "MacroPanel":
        return cls([str(m) for m in frame.index], [str(c) for c in frame.columns],
                   frame.to_numpy(dtype=float), dict(transforms or {}))


def read_panel_csv(path: str | Path) -> pd.DataFrame:
    """Read a ``month,<series>...`` CSV into a month-indexed frame."""
    frame = pd.read_csv(path, dtype={"month": str})
    if frame.columns[0] != "month":
        raise PanelError(f"{path}: first column must be 'month'")
    frame = frame.set_index("month")
    bad = [m for m in frame.index if not MONTH_RE.match(m)]
    if bad:
        raise PanelError(f"{path}: bad month label {bad[0]!r}")
    if frame.index.has_duplicates:
        raise PanelError(f"{path}: duplicate month {frame.index[frame.index.duplicated()][0]}")
    return frame.sort_index().astype(float)


def transform_series(panel: MacroPanel) -> MacroPanel:
    """Apply each series' log flag, then difference it.

    The month axis loses as many leading months as the largest difference
    order. The returned panel carries identity transforms.
    """
    out = panel.values.copy()
    max_diff = 0
    for j, name in enumerate(panel.names):
        spec = panel.transform_for(name)
        col = out[:, j]
        if spec.log:
            bad = np.flatnonzero(col <= 0)
            if bad.size:
                raise PanelError(
                    f"series {name} has non-positive value {col[bad[0]]!r} at {panel.months[bad[0]]}; cannot take log"
                )
            col = np.log(col)
        for _ in range(spec.diff):
            col = np.concatenate([[np.nan], np.diff(col)])
        out[:, j] = col
        max_diff = max(max_diff, spec.diff)
    if panel.nobs <= max_diff:
        raise PanelError(f"panel of {panel.nobs} months is too short to difference {max_diff} times")
    identity = {n: SeriesTransform(log=False, diff=0) for n in panel.names}
    return MacroPanel(panel.months[max_diff:], list(panel.names), out[max_diff:], identity)

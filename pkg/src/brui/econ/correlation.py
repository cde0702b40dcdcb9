"""Month-aligned Pearson correlation between index series."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pandas as pd


class CorrelationError(ValueError):
    pass


@dataclass(frozen=True)
class Comparison:
    r: float
    n: int
    start: str
    end: str
    months: list[str]
    a: np.ndarray
    b: np.ndarray


def align(a: pd.Series, b: pd.Series) -> tuple[pd.Series, pd.Series]:
    """Restrict two month-indexed series to the months they share."""
    common = a.index.intersection(b.index).sort_values()
    if len(common) == 0:
        raise CorrelationError("series share no months")
    return a.loc[common], b.loc[common]


def pearson_correlation(a, b) -> float:
    """Product-moment correlation; pandas Series are first aligned on their index."""
    if isinstance(a, pd.Series) and isinstance(b, pd.Series):
        a, b = align(a, b)
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise CorrelationError(f"series lengths differ: {x.shape} vs {y.shape}")
    if x.size < 2:
        raise CorrelationError(f"need at least 2 paired observations, got {x.size}")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx, syy = np.dot(dx, dx), np.dot(dy, dy)
    if sxx == 0 or syy == 0:
        raise CorrelationError("correlation undefined for a constant series")
    r = np.dot(dx, dy) / np.sqrt(sxx * syy)
    return float(np.clip(r, -1.0, 1.0))


def compare(a: pd.Series, b: pd.Series) -> Comparison:
    a, b = align(a, b)
    r = pearson_correlation(a.to_numpy(), b.to_numpy())
    months = [str(m) for m in a.index]
    return Comparison(r, len(months), months[0], months[-1], months, a.to_numpy(float), b.to_numpy(float))

"""Context-window classification and monthly index construction.

For every uncertainty keyword a window of ``radius`` tokens either side is
taken on the stopword-stripped stream. Windows holding only event-A evidence
count toward the event-A index (BRUI), only event-B toward the event-B index
(CRUI); windows holding both are split between the two in proportion to the
month's single-event counts. Monthly totals are divided by report length and
each series is rescaled so its peak month reads 100.
"""

from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import Report, TokenView
from .lexicon import Category, Lexicon, Match, find_phrases, match_ngrams


class IndexBuildError(ValueError):
    """Raised when an index value is undefined (zero-length report, all-zero series)."""


class WindowClass(str, enum.Enum):
    EVENT_A_ONLY = "event_a_only"
    EVENT_B_ONLY = "event_b_only"
    JOINT = "joint"
    NEITHER = "neither"
    EXCLUDED = "excluded"


@dataclass(frozen=True)
class WindowRecord:
    report_month: str
    center: int
    low: int
    high: int
    classification: WindowClass | None = None

    def contains(self, position: int) -> bool:
        return self.low <= position <= self.high


def extract_windows(
    view: TokenView, matches: Sequence[Match], radius: int = 10, month: str = ""
) -> list[WindowRecord]:
    """One window per uncertainty match, clipped to ``[0, len(view) - 1]``."""
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    end = len(view) - 1
    return [
        WindowRecord(month, m.position, max(0, m.position - radius), min(end, m.position + radius))
        for m in matches
        if m.category is Category.UNCERTAINTY
    ]


def classify_window(
    w: WindowRecord, matches: Sequence[Match], lexicon: Lexicon, view: TokenView
) -> WindowClass:
    """Classify a window by the event phrases starting inside it.

    A phrase belongs to the window when its first token lies in
    ``[low, high]``. The exclusion context (e.g. "scottish") is not a lexicon
    category, so it is looked up directly in *view*.
    """
    a_hits = [m for m in matches if m.category is Category.EVENT_A and w.contains(m.position)]
    b_hit = any(m.category is Category.EVENT_B and w.contains(m.position) for m in matches)

    if a_hits:
        trigger = lexicon.trigger_canonical
        if all(tuple(view.tokens[m.position : m.position + m.length]) == trigger for m in a_hits):
            ctx = lexicon.exclusion_context
            span = view.tokens[w.low : w.high + ctx.max_len]
            if any(start <= w.high - w.low for start, _, _ in find_phrases(span, ctx)):
                return WindowClass.EXCLUDED

    if a_hits and b_hit:
        return WindowClass.JOINT
    if a_hits:
        return WindowClass.EVENT_A_ONLY
    if b_hit:
        return WindowClass.EVENT_B_ONLY
    return WindowClass.NEITHER


@dataclass(frozen=True)
class MonthlyCounts:
    month: str
    brukn: int
    crukn: int
    joint: int
    total_words: int
    uncertainty_hits: int = 0
    excluded: int = 0


def weight_joint(c: MonthlyCounts) -> tuple[float, float]:
    """Split joint windows between the two indices.

    Each side receives its share of the single-event windows; with no
    single-event windows the joint mass is split evenly.
    """
    single = c.brukn + c.crukn
    if c.joint == 0:
        return float(c.brukn), float(c.crukn)
    if single == 0:
        half = c.joint / 2
        return half, half
    a_share = c.joint * c.brukn / single
    b_share = c.joint - a_share
    return c.brukn + a_share, c.crukn + b_share


def standardize(weighted: float, total_words: int) -> float:
    if total_words <= 0:
        raise IndexBuildError(f"cannot standardize by a report length of {total_words} words")
    return weighted / total_words


def normalize_series(raw: Sequence[float]) -> np.ndarray:
    """Rescale linearly so the largest value is exactly 100."""
    values = np.asarray(raw, dtype=float)
    if values.size == 0:
        raise IndexBuildError("cannot normalize an empty series")
    peak = values.max()
    if not peak > 0:
        raise IndexBuildError("cannot normalize a series with no positive value")
    # dividing first keeps the peak at exactly 1.0 before scaling
    return (values / peak) * 100.0


def count_report(report: Report, lexicon: Lexicon, radius: int = 10) -> tuple[MonthlyCounts, list[WindowRecord]]:
    view = report.view()
    matches = match_ngrams(view, lexicon)
    windows = extract_windows(view, matches, radius, report.month)
    classified = [
        WindowRecord(w.report_month, w.center, w.low, w.high, classify_window(w, matches, lexicon, view))
        for w in windows
    ]
    tally = {cls: 0 for cls in WindowClass}
    for w in classified:
        tally[w.classification] += 1
    counts = MonthlyCounts(
        month=report.month,
        brukn=tally[WindowClass.EVENT_A_ONLY],
        crukn=tally[WindowClass.EVENT_B_ONLY],
        joint=tally[WindowClass.JOINT],
        total_words=report.total_words,
        uncertainty_hits=len(windows),
        excluded=tally[WindowClass.EXCLUDED],
    )
    return counts, classified


@dataclass
class IndexSeries:
    name: str
    months: list[str]
    raw: np.ndarray
    normalized: np.ndarray
    counts: list[MonthlyCounts]
    weighted_totals: np.ndarray


def build_indices(
    corpus: Sequence[Report], lexicon: Lexicon, radius: int = 10
) -> tuple[IndexSeries, IndexSeries]:
    """Run the full pipeline and return the (event-A, event-B) index series."""
    if not corpus:
        raise IndexBuildError("empty corpus")
    counts = [count_report(r, lexicon, radius)[0] for r in corpus]
    weighted = np.array([weight_joint(c) for c in counts], dtype=float)
    words = [c.total_words for c in counts]
    months = [c.month for c in counts]

    series = []
    for col, name in ((0, "brui"), (1, "crui")):
        raw = np.array([standardize(w, n) for w, n in zip(weighted[:, col], words)])
        try:
            normalized = normalize_series(raw)
        except IndexBuildError as exc:
            raise IndexBuildError(f"{name}: {exc} (no classified windows in any month)") from None
        series.append(IndexSeries(name, months, raw, normalized, counts, weighted[:, col].copy()))
    return series[0], series[1]


INDEX_COLUMNS = (
    "month", "brukn", "crukn", "joint", "tbrukn", "tcrukn",
    "total_words", "brui_raw", "brui", "crui_raw", "crui",
)


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def index_rows(brui: IndexSeries, crui: IndexSeries) -> list[dict]:
    rows = []
    for t, c in enumerate(brui.counts):
        rows.append({
            "month": c.month,
            "brukn": c.brukn,
            "crukn": c.crukn,
            "joint": c.joint,
            "tbrukn": float(brui.weighted_totals[t]),
            "tcrukn": float(crui.weighted_totals[t]),
            "total_words": c.total_words,
            "brui_raw": float(brui.raw[t]),
            "brui": float(brui.normalized[t]),
            "crui_raw": float(crui.raw[t]),
            "crui": float(crui.normalized[t]),
        })
    return rows


def write_index_csv(path: str | Path, brui: IndexSeries, crui: IndexSeries) -> None:
    lines = [",".join(INDEX_COLUMNS)]
    for row in index_rows(brui, crui):
        lines.append(",".join(
            _fmt(v) if isinstance(v, float) else str(v) for v in (row[c] for c in INDEX_COLUMNS)
        ))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_index_json(path: str | Path, brui: IndexSeries, crui: IndexSeries) -> None:
    rows = [
        {k: (float(_fmt(v)) if isinstance(v, float) else v) for k, v in row.items()}
        for row in index_rows(brui, crui)
    ]
    Path(path).write_text(json.dumps({"columns": list(INDEX_COLUMNS), "rows": rows}, indent=2) + "\n", encoding="utf-8")


def counts_as_dict(c: MonthlyCounts) -> dict:
    return asdict(c)

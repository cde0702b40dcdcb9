"""Monthly report ingestion and token views.

A corpus is a directory of UTF-8 text files named ``YYYY-MM.txt``, one per
month. Each file becomes a :class:`Report` holding the lowercased token
stream; :func:`remove_stopwords` yields the stopword-stripped
:class:`TokenView` on which keyword matching runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .stopwords import ENGLISH_STOPWORDS

MONTH_RE = re.compile(r"^(\d{4})-(0[1-9]|1[0-2])$")

# Runs of letters/digits joined by single internal hyphens or apostrophes.
_TOKEN_RE = re.compile(r"[^\W_]+(?:['\-][^\W_]+)*")


class CorpusError(ValueError):
    """Raised when a corpus directory cannot be turned into reports."""


def parse_month(text: str) -> str:
    """Validate a ``YYYY-MM`` string and return it unchanged."""
    if not MONTH_RE.match(text):
        raise ValueError(f"not a YYYY-MM month: {text!r}")
    return text


def normalize_text(raw: str) -> str:
    return raw.lower()


def tokenize(text: str) -> list[str]:
    """Split lowercased text into word tokens.

    Leading and trailing punctuation is dropped; internal hyphens and
    apostrophes survive, so ``brexit-related``, ``covid-19`` and ``uk's`` are
    single tokens.
    """
    return _TOKEN_RE.findall(text)


@dataclass(frozen=True)
class TokenView:
    tokens: tuple[str, ...]
    origin_map: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.tokens)


def remove_stopwords(tokens: Sequence[str], stopwords: Iterable[str] = ENGLISH_STOPWORDS) -> TokenView:
    stop = stopwords if isinstance(stopwords, (set, frozenset)) else frozenset(stopwords)
    kept = [(i, tok) for i, tok in enumerate(tokens) if tok not in stop]
    return TokenView(tuple(t for _, t in kept), tuple(i for i, _ in kept))


@dataclass(frozen=True)
class Report:
    month: str
    raw_text: str = field(repr=False)
    tokens: tuple[str, ...] = field(repr=False)

    @property
    def total_words(self) -> int:
        return len(self.tokens)

    @classmethod
    def from_text(cls, month: str, raw_text: str) -> "Report":
        return cls(parse_month(month), raw_text, tuple(tokenize(normalize_text(raw_text))))

    def view(self) -> TokenView:
        return remove_stopwords(self.tokens)


def load_corpus(directory: str | Path) -> list[Report]:
    """Read every ``YYYY-MM.txt`` file in *directory*, sorted by month.

    Raises :class:`CorpusError` for a missing directory, a filename that is
    not a month, two files for the same month, or a report with no words
    (its standardized index value would be undefined).
    """
    root = Path(directory)
    if not root.is_dir():
        raise CorpusError(f"corpus directory not found: {root}")

    seen: dict[str, Path] = {}
    for path in sorted(root.iterdir()):
        if not path.is_file() or path.name.startswith("."):
            continue
        if path.suffix.lower() != ".txt" or not MONTH_RE.match(path.stem):
            raise CorpusError(f"unparseable corpus filename (want YYYY-MM.txt): {path.name}")
        month = path.stem
        if month in seen:
            raise CorpusError(f"duplicate month {month}: {seen[month].name} and {path.name}")
        seen[month] = path

    reports = []
    for month in sorted(seen):
        text = seen[month].read_text(encoding="utf-8")
        report = Report.from_text(month, text)
        if report.total_words == 0:
            raise CorpusError(f"empty report for month {month}: {seen[month].name}")
        reports.append(report)
    return reports

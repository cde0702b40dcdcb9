"""Keyword lexicon and exact n-gram matching.

Phrases are stored twice: as written (lowercased) and in canonical form, with
stopwords removed by the same rule applied to report text. Matching runs on
the stopword-stripped token stream, so "exit from the EU" is found as the
bigram ``exit eu``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import yaml

from .corpus import Report, TokenView, normalize_text, tokenize
from .stopwords import ENGLISH_STOPWORDS


class LexiconError(ValueError):
    pass


class Category(str, enum.Enum):
    UNCERTAINTY = "uncertainty"
    EVENT_A = "event_a"
    EVENT_B = "event_b"


Phrase = tuple[str, ...]


def canonicalize_phrase(phrase: Sequence[str]) -> Phrase:
    """Drop stopwords from a tokenized phrase, unless nothing would be left."""
    kept = tuple(t for t in phrase if t not in ENGLISH_STOPWORDS)
    return kept if kept else tuple(phrase)


def _phrase_tokens(text: str) -> Phrase:
    return tuple(tokenize(normalize_text(text)))


@dataclass(frozen=True)
class PhraseSet:
    """Phrases of one category plus the canonical lookup used for matching."""

    phrases: tuple[str, ...]
    canonical: Mapping[Phrase, str] = field(repr=False)
    max_len: int = field(repr=False)

    @classmethod
    def build(cls, name: str, items: Iterable[str]) -> "PhraseSet":
        phrases: list[str] = []
        canonical: dict[Phrase, str] = {}
        for item in items:
            toks = _phrase_tokens(str(item))
            if not toks:
                raise LexiconError(f"{name}: phrase {item!r} has no word tokens")
            text = " ".join(toks)
            if text in phrases:
                continue
            phrases.append(text)
            # first-listed phrase names a shared canonical form
            canonical.setdefault(canonicalize_phrase(toks), text)
        if not phrases:
            raise LexiconError(f"empty lexicon category: {name}")
        return cls(tuple(phrases), canonical, max(len(c) for c in canonical))

    def __len__(self) -> int:
        return len(self.phrases)


@dataclass(frozen=True)
class Lexicon:
    uncertainty: PhraseSet
    event_a: PhraseSet
    event_b: PhraseSet
    exclusion_trigger: str = "referendum"
    exclusion_context: PhraseSet = field(
        default_factory=lambda: PhraseSet.build("exclusion_context", ["scotland", "scottish"])
    )

    def category(self, cat: Category) -> PhraseSet:
        return getattr(self, cat.value)

    @property
    def trigger_canonical(self) -> Phrase:
        return canonicalize_phrase(_phrase_tokens(self.exclusion_trigger))

    @classmethod
    def from_mapping(cls, config: Mapping, base: Mapping | None = None) -> "Lexicon":
        """Build a lexicon from a parsed config; keys absent from *config* come from *base*."""
        merged = dict(base or {})
        merged.update(config or {})
        unknown = set(merged) - {c.value for c in Category} - {"exclusion_trigger", "exclusion_context"}
        if unknown:
            raise LexiconError(f"unknown lexicon keys: {', '.join(sorted(unknown))}")

        sets = {}
        for cat in Category:
            if cat.value not in merged:
                raise LexiconError(f"missing lexicon category: {cat.value}")
            items = merged[cat.value] or []
            if isinstance(items, str):
                raise LexiconError(f"{cat.value}: expected a list of phrases")
            sets[cat.value] = PhraseSet.build(cat.value, items)

        owner: dict[str, str] = {}
        for name, ps in sets.items():
            for phrase in ps.phrases:
                if phrase in owner:
                    raise LexiconError(
                        f"phrase {phrase!r} appears in two categories: {owner[phrase]} and {name}"
                    )
                owner[phrase] = name

        trigger = " ".join(_phrase_tokens(str(merged.get("exclusion_trigger", "referendum"))))
        context = merged.get("exclusion_context", ["scotland", "scottish"]) or []
        return cls(
            uncertainty=sets["uncertainty"],
            event_a=sets["event_a"],
            event_b=sets["event_b"],
            exclusion_trigger=trigger,
            exclusion_context=PhraseSet.build("exclusion_context", context),
        )


def _default_config() -> dict:
    text = resources.files("brui.data").joinpath("default_lexicon.yaml").read_text(encoding="utf-8")
    return yaml.safe_load(text)


def default_lexicon() -> Lexicon:
    return Lexicon.from_mapping(_default_config())


def load_lexicon(path: str | Path | None = None) -> Lexicon:
    """Load a lexicon YAML file; categories it omits fall back to the bundled default."""
    if path is None:
        return default_lexicon()
    path = Path(path)
    try:
        config = yaml.safe_load(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise LexiconError(f"lexicon file not found: {path}") from None
    except yaml.YAMLError as exc:
        raise LexiconError(f"cannot parse lexicon file {path}: {exc}") from None
    if config is None:
        config = {}
    if not isinstance(config, Mapping):
        raise LexiconError(f"lexicon file {path} must hold a mapping")
    return Lexicon.from_mapping(config, base=_default_config())


@dataclass(frozen=True, order=True)
class Match:
    position: int
    category: Category
    length: int
    phrase: str


def find_phrases(tokens: Sequence[str], phrases: PhraseSet) -> list[tuple[int, int, str]]:
    """Longest canonical phrase at each start position, as (start, length, phrase)."""
    out = []
    n = len(tokens)
    lookup = phrases.canonical
    for i in range(n):
        for length in range(min(phrases.max_len, n - i), 0, -1):
            hit = lookup.get(tuple(tokens[i : i + length]))
            if hit is not None:
                out.append((i, length, hit))
                break
    return out


def match_ngrams(view: TokenView, lexicon: Lexicon) -> list[Match]:
    """All lexicon matches in a stopword-stripped view, sorted by position.

    Within a category only the longest phrase starting at a position is kept;
    matches from different categories may overlap.
    """
    tokens = view.tokens
    matches = [
        Match(pos, cat, length, phrase)
        for cat in Category
        for pos, length, phrase in find_phrases(tokens, lexicon.category(cat))
    ]
    order = {c: i for i, c in enumerate(Category)}
    matches.sort(key=lambda m: (m.position, order[m.category]))
    return matches


@dataclass(frozen=True)
class KeywordCount:
    category: Category
    phrase: str
    count: int

    @property
    def absent(self) -> bool:
        return self.count == 0


def keyword_frequency(corpus: Sequence[Report], lexicon: Lexicon) -> list[KeywordCount]:
    """Total matches of every lexicon phrase across *corpus*.

    Phrases that share a canonical form (e.g. "exit the eu" and "exit from
    the eu") are indistinguishable after stopword removal and report the same
    count. Zero-count phrases are flagged via ``absent``.
    """
    if not corpus:
        raise ValueError("keyword_frequency needs a non-empty corpus")
    counts: Counter[tuple[Category, str]] = Counter()
    for report in corpus:
        for m in match_ngrams(report.view(), lexicon):
            counts[m.category, m.phrase] += 1

    out = []
    for cat in Category:
        ps = lexicon.category(cat)
        for phrase in ps.phrases:
            canon_name = ps.canonical[canonicalize_phrase(tuple(phrase.split(" ")))]
            out.append(KeywordCount(cat, phrase, counts[cat, canon_name]))
    return out

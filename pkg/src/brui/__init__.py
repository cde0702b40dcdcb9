"""Event-uncertainty indices from report text, and VAR tools to study them."""

from .corpus import Report, TokenView, load_corpus, normalize_text, remove_stopwords, tokenize
from .indexer import IndexSeries, build_indices, normalize_series, weight_joint
from .lexicon import Category, Lexicon, Match, default_lexicon, load_lexicon, match_ngrams

__version__ = "0.1.0"

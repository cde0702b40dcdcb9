"""Synthetic corpora and macro panels for tests and desk-scale experiments.

Filler text is drawn from a vocabulary that shares no token with the default
lexicon, so every keyword hit comes from a deliberately planted phrase.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd

from .econ.transforms import DEFAULT_ORDER

FILLER = (
    "the of and to in a is that for on with as by at from this it be are was "
    "economy growth inflation bank rates output sector firms prices demand "
    "investment consumer spending labour wages housing policy fiscal budget "
    "government minister parliament election sterling pound euro dollar bond "
    "yields credit lending services manufacturing energy oil gas retail "
    "survey forecast quarter annual monthly data report outlook recovery "
    "exports imports tariffs productivity business confidence households "
    "savings debt deficit spending tax reform central governor committee "
    "london europe ireland britain european union council treaty talks deal"
).split()

UNCERTAINTY_FORMS = ("uncertainty", "Uncertainty", "uncertain", "volatility", "instability",
                     "unclear", "worry", "fear", "unpredictable", "tension")
EVENT_A_FORMS = ("Brexit", "brexit", "exit from the EU", "customs union", "Article 50",
                 "withdrawal agreement", "single market", "Brexit-related", "post-Brexit",
                 "UK's withdrawal", "transition period", "exiting the European Union")
EVENT_B_FORMS = ("pandemic", "COVID-19", "Covid", "coronavirus", "lockdown", "vaccine", "outbreak")


def month_range(start: str, end: str) -> list[str]:
    return [str(p) for p in pd.period_range(start, end, freq="M")]


def _sprinkle(words: list[str], phrase: str, at: int) -> None:
    words[at:at] = phrase.split()


def synthetic_report(
    rng: np.random.Generator,
    n_words: int,
    n_event_a: int = 0,
    n_event_b: int = 0,
    n_joint: int = 0,
    n_scottish: int = 0,
    n_loose: int = 0,
) -> str:
    """Filler text with planted uncertainty clauses.

    Each planted clause puts an uncertainty word next to the requested event
    phrase(s); ``n_loose`` adds bare event phrases and uncertainty words far
    from anything. Clauses may still land within ten tokens of one another,
    so the planted mix is a target, not an exact count.
    """
    words = list(rng.choice(FILLER, size=n_words))
    clauses = []
    for _ in range(n_event_a):
        clauses.append(f"{rng.choice(UNCERTAINTY_FORMS)} over {rng.choice(EVENT_A_FORMS)}")
    for _ in range(n_event_b):
        clauses.append(f"{rng.choice(EVENT_B_FORMS)} {rng.choice(UNCERTAINTY_FORMS)}")
    for _ in range(n_joint):
        clauses.append(f"{rng.choice(EVENT_A_FORMS)} and {rng.choice(EVENT_B_FORMS)} {rng.choice(UNCERTAINTY_FORMS)}")
    for _ in range(n_scottish):
        clauses.append(f"Scottish referendum {rng.choice(UNCERTAINTY_FORMS)}")
    for _ in range(n_loose):
        pool = UNCERTAINTY_FORMS + EVENT_A_FORMS + EVENT_B_FORMS
        clauses.append(str(rng.choice(pool)))
    for clause in clauses:
        _sprinkle(words, clause, int(rng.integers(0, len(words) + 1)))
    text = " ".join(words)
    # sentence punctuation exercises the tokenizer's stripping rules
    out, i = [], 0
    for w in text.split(" "):
        i += 1
        out.append(w + ("." if i % 17 == 0 else "," if i % 11 == 0 else ""))
    return " ".join(out)


def _years(months: Sequence[str]) -> np.ndarray:
    return np.array([int(m[:4]) + (int(m[5:]) - 1) / 12 for m in months])


def brexit_intensity(months: Sequence[str]) -> np.ndarray:
    """A stylized event-A intensity path: rising to mid-2016, peaking 2019, fading after 2021."""
    years = _years(months)
    return 1.0 + 4.0 * np.exp(-((years - 2019.0) ** 2) / 3.0) + 2.0 * np.exp(-((years - 2016.5) ** 2) / 0.2)


def covid_intensity(months: Sequence[str]) -> np.ndarray:
    years = _years(months)
    return np.where(years >= 2020.1, 6.0 * np.exp(-((years - 2020.6) ** 2) / 0.8), 0.0)


def write_synthetic_corpus(
    directory: str | Path,
    start: str = "2012-05",
    end: str = "2025-01",
    words_per_report: int = 5000,
    seed: int = 0,
) -> list[str]:
    """Write one ``YYYY-MM.txt`` report per month and return the months."""
    rng = np.random.default_rng(seed)
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    months = month_range(start, end)
    a_path = brexit_intensity(months)
    b_path = covid_intensity(months)
    for m, a, b in zip(months, a_path, b_path):
        text = synthetic_report(
            rng,
            int(words_per_report * rng.uniform(0.9, 1.1)),
            n_event_a=1 + int(rng.poisson(a)),
            n_event_b=int(rng.poisson(b)) + (1 if m >= "2020-01" else 0),
            n_joint=int(rng.poisson(min(a, b) / 2)),
            n_scottish=int(rng.poisson(0.3)),
            n_loose=int(rng.poisson(3)),
        )
        (root / f"{m}.txt").write_text(text + "\n", encoding="utf-8")
    return months


def synthetic_panel(months: Sequence[str], brui: Sequence[float] | None = None, seed: int = 0) -> pd.DataFrame:
    """Levels of the nine macro series; growth rates load on lagged index changes.

    Columns follow the default ordering minus the index. Logged series are
    kept strictly positive.
    """
    rng = np.random.default_rng(seed)
    T = len(months)
    names = [n for n in DEFAULT_ORDER if n != "BRUI"]
    driver = np.zeros(T)
    if brui is not None:
        b = np.log(np.asarray(brui, dtype=float))
        driver[1:] = np.diff(b)
    lagged = np.concatenate([[0.0], driver[:-1]])
    load = {"GDP": -0.004, "CPI": 0.002, "PPI": 0.003, "X": -0.01, "M": -0.015,
            "GBP_EUR": -0.01, "GBP_USD": -0.012, "EMP": -0.001, "UEMP": 0.05}
    start = {"GDP": 90.0, "CPI": 98.0, "PPI": 97.0, "X": 25.0, "M": 40.0,
             "GBP_EUR": 1.2, "GBP_USD": 1.5, "EMP": 30.0, "UEMP": 5.5}
    vol = {"GDP": 0.005, "CPI": 0.002, "PPI": 0.004, "X": 0.03, "M": 0.025,
           "GBP_EUR": 0.01, "GBP_USD": 0.012, "EMP": 0.001, "UEMP": 0.05}
    data = {}
    for name in names:
        shocks = vol[name] * rng.standard_normal(T)
        ar = np.zeros(T)
        for t in range(1, T):
            ar[t] = 0.3 * ar[t - 1] + shocks[t] + load[name] * lagged[t]
        if name in ("GBP_EUR", "GBP_USD", "UEMP"):
            data[name] = start[name] + np.cumsum(ar) * start[name]
        else:
            data[name] = start[name] * np.exp(np.cumsum(ar + 0.001))
    return pd.DataFrame(data, index=pd.Index(list(months), name="month"))

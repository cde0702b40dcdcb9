"""Command-line front end: ``build-index``, ``analyze``, ``compare``, ``plot-data``.

Every failure ends with exit status 1 and a single ``brui: error: ...`` line
on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np
import pandas as pd

from .config import AnalysisConfig, ConfigError, dump_config, load_config
from .corpus import CorpusError, load_corpus
from .econ.correlation import CorrelationError, compare
from .econ.fevd import DegenerateVarianceError, fevd
from .econ.irf import BootstrapError, NotPositiveDefiniteError, bootstrap_irf
from .econ.transforms import MacroPanel, PanelError, read_panel_csv, transform_series
from .econ.var import VarError, fit_var, max_feasible_lag, select_lag
from .indexer import IndexBuildError, build_indices, write_index_csv, write_index_json
from .lexicon import Category, LexiconError, keyword_frequency, load_lexicon
from .stopwords import STOPWORDS_VERSION

log = logging.getLogger("brui")

USER_ERRORS = (
    ConfigError, CorpusError, LexiconError, IndexBuildError, PanelError, VarError,
    NotPositiveDefiniteError, BootstrapError, DegenerateVarianceError, CorrelationError,
    FileNotFoundError, OSError,
)


class CliError(RuntimeError):
    pass


def _g(x: float) -> str:
    return f"{float(x):.10g}"


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=False) + "\n", encoding="utf-8")


def _write_csv(path: Path, header, rows) -> None:
    lines = [",".join(header)]
    lines += [",".join(_g(v) if isinstance(v, (float, np.floating)) else str(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


# --- build-index -----------------------------------------------------------

def cmd_build_index(cfg: AnalysisConfig, out: Path) -> dict:
    if cfg.corpus_dir is None:
        raise ConfigError("no corpus directory given (corpus_dir in config or --corpus)")
    lexicon = load_lexicon(cfg.lexicon_path)
    corpus = load_corpus(cfg.corpus_dir)
    brui, crui = build_indices(corpus, lexicon, cfg.radius)
    out.mkdir(parents=True, exist_ok=True)
    write_index_csv(out / "index.csv", brui, crui)
    write_index_json(out / "index.json", brui, crui)

    freq = keyword_frequency(corpus, lexicon)
    summary = {
        "months": len(corpus),
        "first_month": corpus[0].month,
        "last_month": corpus[-1].month,
        "stopwords": STOPWORDS_VERSION,
        "radius": cfg.radius,
        "windows": {
            "uncertainty_hits": sum(c.uncertainty_hits for c in brui.counts),
            "event_a_only": sum(c.brukn for c in brui.counts),
            "event_b_only": sum(c.crukn for c in brui.counts),
            "joint": sum(c.joint for c in brui.counts),
            "excluded": sum(c.excluded for c in brui.counts),
        },
        "keyword_totals": {
            cat.value: sum(k.count for k in freq if k.category is cat) for cat in Category
        },
        "keywords": [
            {"category": k.category.value, "phrase": k.phrase, "count": k.count, "absent": k.absent}
            for k in freq
        ],
        "absent_keywords": [k.phrase for k in freq if k.absent],
    }
    _write_json(out / "build_summary.json", summary)
    log.info("wrote %s (%d months)", out / "index.csv", len(corpus))
    return summary


# --- analyze ---------------------------------------------------------------

def _index_series(cfg: AnalysisConfig, out: Path) -> pd.Series:
    path = Path(cfg.index_path) if cfg.index_path else out / "index.csv"
    if not path.exists():
        if cfg.index_path is None and cfg.corpus_dir is not None:
            cmd_build_index(cfg, out)
        else:
            raise CliError(f"index file not found: {path}")
    frame = pd.read_csv(path, dtype={"month": str}).set_index("month")
    if cfg.index_column not in frame.columns:
        raise CliError(f"{path}: no column {cfg.index_column!r}")
    return frame[cfg.index_column].astype(float).rename(cfg.index_variable)


def _consecutive(months: list[str]) -> bool:
    periods = pd.PeriodIndex(months, freq="M")
    return bool(np.all(np.diff(periods.asi8) == 1))


def assemble_panel(cfg: AnalysisConfig, out: Path) -> MacroPanel:
    if cfg.panel_path is None:
        raise ConfigError("no macro panel given (panel_path in config or --panel)")
    macro = read_panel_csv(cfg.panel_path)
    index = _index_series(cfg, out)
    macro = macro.drop(columns=[cfg.index_variable], errors="ignore")
    frame = pd.concat([index, macro], axis=1, join="inner")
    if frame.empty:
        raise PanelError("index and panel share no months")
    if not _consecutive(list(frame.index)):
        raise PanelError("merged panel has gaps in its month axis")
    order = cfg.variable_order or [cfg.index_variable] + [c for c in macro.columns]
    transforms = {n: cfg.series_transform(n) for n in cfg.transform_spec}
    return MacroPanel.from_frame(frame, transforms).reorder(order)


def _analyze_sample(name: str, panel: MacroPanel, cfg: AnalysisConfig, seed: int, out: Path) -> dict:
    T, k = panel.values.shape
    if cfg.lag.fixed is not None:
        p, p_max_used = cfg.lag.fixed, None
    else:
        p_max_used = min(cfg.lag.p_max, max_feasible_lag(T, k))
        if p_max_used < 1:
            raise VarError(f"{T} months are too few for any {k}-variable VAR")
        p = select_lag(panel, p_max_used, cfg.lag.criterion)
    model = fit_var(panel, p)
    irf = bootstrap_irf(model, panel, cfg.horizon, cfg.bootstrap.reps, cfg.bootstrap.level,
                        seed, workers=cfg.bootstrap.workers)
    table = fevd(model, cfg.horizon)

    _write_csv(out / f"irf_{name}.csv", ("horizon", "shock", "response", "point", "lower", "upper"),
               irf.long_rows())
    first = model.names[0]
    _write_csv(out / f"fevd_{name}.csv", ["period"] + model.names,
               ([h] + list(row) for h, row in zip(table.horizons, table.for_response(first))))
    _write_csv(out / f"fevd_{name}_all.csv", ["response", "period"] + model.names,
               ([resp, h] + list(table.shares[h - 1, i])
                for i, resp in enumerate(model.names) for h in table.horizons))
    return {
        "status": "ok",
        "months": [panel.months[0], panel.months[-1]],
        "nobs": T,
        "lag_order": p,
        "lag_selection": "fixed" if p_max_used is None else f"{cfg.lag.criterion.lower()} over 1..{p_max_used}",
        "stable": model.is_stable(),
        "spectral_radius": float(_g(model.spectral_radius())),
        "bootstrap_reps": irf.reps,
        "bootstrap_discarded": irf.discarded,
        "files": [f"irf_{name}.csv", f"fevd_{name}.csv", f"fevd_{name}_all.csv"],
    }


def cmd_analyze(cfg: AnalysisConfig, out: Path) -> dict:
    out.mkdir(parents=True, exist_ok=True)
    seed = cfg.resolved_seed()
    levels = assemble_panel(cfg, out)
    panel = transform_series(levels)

    samples = {"full": (None, None)}
    samples.update({n: tuple(r) for n, r in cfg.subperiods.items()})
    results = {}
    for name, (start, end) in samples.items():
        try:
            if start is not None and (start < levels.months[0] or end > levels.months[-1]):
                raise PanelError(
                    f"range {start}..{end} lies outside the panel's {levels.months[0]}..{levels.months[-1]}"
                )
            results[name] = _analyze_sample(name, panel.between(start, end), cfg, seed, out)
        except USER_ERRORS as exc:
            results[name] = {"status": "failed", "reason": f"{type(exc).__name__}: {exc}"}
            log.warning("sample %s failed: %s", name, exc)

    report = {
        "seed": seed,
        "variables": panel.names,
        "transforms": {n: vars(levels.transform_for(n)) for n in levels.names},
        "conventions": {
            "estimator": "equation-wise least squares with intercept",
            "sigma_divisor": "T - p",
            "identification": "Cholesky, lower triangular, variable order as listed",
            "shock_size": "one standard deviation of the orthogonalized innovation",
            "bootstrap": "residual recursive design, centered residuals, first p observations fixed, full re-estimation",
            "percentiles": "linear interpolation between order statistics",
            "rng": "numpy PCG64, SeedSequence(seed).spawn(reps), replication r uses child r",
            "information_criterion_covariance": "residual cross-product / common-sample size",
        },
        "samples": results,
        "config": cfg.to_dict(),
    }
    _write_json(out / "report.json", report)
    (out / "effective_config.yaml").write_text(dump_config(cfg), encoding="utf-8")
    if results["full"]["status"] != "ok":
        raise CliError(f"full-sample analysis failed: {results['full']['reason']}")
    return report


# --- compare ---------------------------------------------------------------

def _read_single_series(path: str, column: str | None) -> pd.Series:
    p = Path(path)
    if not p.exists():
        raise CliError(f"series file not found: {p}")
    frame = pd.read_csv(p, dtype={"month": str})
    if "month" not in frame.columns:
        raise CliError(f"{p}: no 'month' column")
    frame = frame.set_index("month")
    if column is None:
        if frame.shape[1] != 1:
            raise CliError(f"{p}: {frame.shape[1]} value columns; choose one with --column-a/--column-b")
        column = frame.columns[0]
    if column not in frame.columns:
        raise CliError(f"{p}: no column {column!r}")
    series = frame[column].astype(float).dropna()
    return series.sort_index()


def cmd_compare(path_a: str, path_b: str, out: Path, column_a=None, column_b=None) -> dict:
    a = _read_single_series(path_a, column_a)
    b = _read_single_series(path_b, column_b)
    result = compare(a, b)
    out.mkdir(parents=True, exist_ok=True)
    report = {
        "r": result.r,
        "n": result.n,
        "overlap_start": result.start,
        "overlap_end": result.end,
        "series_a": {"path": str(path_a), "column": column_a or a.name},
        "series_b": {"path": str(path_b), "column": column_b or b.name},
        "months": result.months,
        "a": [float(v) for v in result.a],
        "b": [float(v) for v in result.b],
    }
    _write_json(out / "compare.json", report)
    return report


# --- plot-data -------------------------------------------------------------

FIGURES = ("index", "compare", "irf", "fevd")


def cmd_plot_data(src: Path, out: Path, only: list[str] | None = None) -> list[str]:
    """Reshape analysis outputs into one tidy CSV per figure."""
    wanted = list(only) if only else list(FIGURES)
    out.mkdir(parents=True, exist_ok=True)
    written: list[str] = []

    def require(path: Path) -> bool:
        if path.exists():
            return True
        if only:
            raise CliError(f"missing upstream file for plot data: {path}")
        return False

    if "index" in wanted and require(src / "index.csv"):
        frame = pd.read_csv(src / "index.csv", dtype={"month": str})
        for col in ("brui", "crui"):
            target = out / f"fig_index_{col}.csv"
            _write_csv(target, ("month", col), zip(frame["month"], frame[col].astype(float)))
            written.append(target.name)

    if "compare" in wanted and require(src / "compare.json"):
        data = json.loads((src / "compare.json").read_text(encoding="utf-8"))
        target = out / "fig_compare.csv"
        _write_csv(target, ("month", "a", "b"), zip(data["months"], map(float, data["a"]), map(float, data["b"])))
        written.append(target.name)

    if "irf" in wanted:
        files = sorted(src.glob("irf_*.csv"))
        if not files:
            require(src / "irf_full.csv")
        for path in files:
            frame = pd.read_csv(path)
            names = list(dict.fromkeys(frame["shock"]))
            frame["panel_row"] = frame["response"].map(names.index)
            frame["panel_col"] = frame["shock"].map(names.index)
            frame = frame.sort_values(["panel_row", "panel_col", "horizon"], kind="stable")
            target = out / f"fig_{path.stem}_grid.csv"
            _write_csv(target, ("panel_row", "panel_col", "shock", "response", "horizon", "point", "lower", "upper"),
                       frame[["panel_row", "panel_col", "shock", "response", "horizon", "point", "lower", "upper"]]
                       .itertuples(index=False, name=None))
            written.append(target.name)

    if "fevd" in wanted:
        files = sorted(p for p in src.glob("fevd_*_all.csv"))
        if not files:
            require(src / "fevd_full_all.csv")
        for path in files:
            frame = pd.read_csv(path)
            long = frame.melt(id_vars=["response", "period"], var_name="shock", value_name="share")
            target = out / f"fig_{path.stem.removesuffix('_all')}_stacked.csv"
            _write_csv(target, ("response", "period", "shock", "share"),
                       long[["response", "period", "shock", "share"]].itertuples(index=False, name=None))
            written.append(target.name)

    if not written:
        raise CliError(f"no analysis outputs found in {src}")
    return written


# --- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", default=argparse.SUPPRESS, help="YAML analysis config")
    common.add_argument("--out", metavar="DIR", default=argparse.SUPPRESS, help="output directory (default: out)")
    common.add_argument("--seed", type=int, metavar="N", default=argparse.SUPPRESS, help="bootstrap seed")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="suppress progress logs")

    parser = argparse.ArgumentParser(prog="brui", parents=[common],
                                     description="Build event-uncertainty indices and study them with VARs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-index", parents=[common], help="corpus -> index CSV/JSON")
    p.add_argument("--corpus", metavar="DIR")
    p.add_argument("--lexicon", metavar="PATH")
    p.add_argument("--radius", type=int)

    p = sub.add_parser("analyze", parents=[common], help="index + macro panel -> IRF/FEVD")
    p.add_argument("--panel", metavar="PATH")
    p.add_argument("--index", metavar="PATH")
    p.add_argument("--corpus", metavar="DIR")
    p.add_argument("--reps", type=int)

    p = sub.add_parser("compare", parents=[common], help="correlate two month-indexed series")
    p.add_argument("series_a")
    p.add_argument("series_b")
    p.add_argument("--column-a")
    p.add_argument("--column-b")

    p = sub.add_parser("plot-data", parents=[common], help="emit tidy per-figure CSVs")
    p.add_argument("--from", dest="src", metavar="DIR", help="directory with analysis outputs (default: --out)")
    p.add_argument("--only", nargs="+", choices=FIGURES)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    quiet = getattr(args, "quiet", False)
    logging.basicConfig(level=logging.WARNING if quiet else logging.INFO, format="%(message)s", stream=sys.stderr)
    out = Path(getattr(args, "out", "out"))
    try:
        cfg = load_config(getattr(args, "config", None))
        if getattr(args, "seed", None) is not None:
            cfg.bootstrap.seed = args.seed
        for flag, attr in (("corpus", "corpus_dir"), ("lexicon", "lexicon_path"), ("radius", "radius"),
                           ("panel", "panel_path"), ("index", "index_path")):
            value = getattr(args, flag, None)
            if value is not None:
                setattr(cfg, attr, str(Path(value).resolve()) if attr.endswith(("_dir", "_path")) else value)
        if getattr(args, "reps", None) is not None:
            cfg.bootstrap.reps = args.reps
        cfg.validate()

        if args.command == "build-index":
            cmd_build_index(cfg, out)
        elif args.command == "analyze":
            cmd_analyze(cfg, out)
        elif args.command == "compare":
            report = cmd_compare(args.series_a, args.series_b, out, args.column_a, args.column_b)
            log.info("r = %.6f over %s..%s (n=%d)", report["r"], report["overlap_start"],
                     report["overlap_end"], report["n"])
        elif args.command == "plot-data":
            cmd_plot_data(Path(args.src) if args.src else out, out, args.only)
    except (CliError, *USER_ERRORS) as exc:
        reason = " ".join(str(exc).split())
        print(f"brui: error: {type(exc).__name__}: {reason}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

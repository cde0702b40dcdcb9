"""Write a synthetic report corpus, macro panel and analysis config.

    python3 scripts/make_synthetic_data.py --dest data/synthetic
"""

import argparse
from pathlib import Path

import yaml

from brui.synthetic import synthetic_panel, write_synthetic_corpus


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dest", default="data/synthetic")
    ap.add_argument("--start", default="2012-05")
    ap.add_argument("--end", default="2025-01")
    ap.add_argument("--words", type=int, default=5000, help="approximate words per report")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    dest = Path(args.dest)
    months = write_synthetic_corpus(dest / "corpus", args.start, args.end, args.words, args.seed)
    synthetic_panel(months, seed=args.seed).to_csv(dest / "panel.csv")
    config = {
        "corpus_dir": "corpus",
        "panel_path": "panel.csv",
        "bootstrap": {"reps": 999, "level": 90, "seed": args.seed},
    }
    (dest / "config.yaml").write_text(yaml.safe_dump(config, sort_keys=False), encoding="utf-8")
    print(f"{len(months)} reports, panel and config written under {dest}")


if __name__ == "__main__":
    main()

"""How much does the index move with the context-window radius?

Builds the index at several radii over one corpus and prints, for each radius,
the window mix and the correlation of the normalized series with the
radius-10 baseline.

    python3 scripts/radius_sensitivity.py data/synthetic/corpus --radii 5 10 15 20
"""

import argparse

from brui.corpus import load_corpus
from brui.econ.correlation import pearson_correlation
from brui.indexer import build_indices
from brui.lexicon import load_lexicon


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus")
    ap.add_argument("--lexicon")
    ap.add_argument("--radii", type=int, nargs="+", default=[5, 10, 15, 20])
    ap.add_argument("--baseline", type=int, default=10)
    args = ap.parse_args()

    corpus = load_corpus(args.corpus)
    lex = load_lexicon(args.lexicon)
    built = {r: build_indices(corpus, lex, r) for r in sorted(set(args.radii) | {args.baseline})}
    base_a, base_b = built[args.baseline]
    print(f"{'radius':>6} {'A-only':>7} {'B-only':>7} {'joint':>6} {'excl':>5} {'r(A)':>8} {'r(B)':>8}")
    for r, (a, b) in built.items():
        tot = lambda f: sum(f(c) for c in a.counts)
        print(f"{r:>6} {tot(lambda c: c.brukn):>7} {tot(lambda c: c.crukn):>7} {tot(lambda c: c.joint):>6} "
              f"{tot(lambda c: c.excluded):>5} {pearson_correlation(a.normalized, base_a.normalized):>8.4f} "
              f"{pearson_correlation(b.normalized, base_b.normalized):>8.4f}")


if __name__ == "__main__":
    main()

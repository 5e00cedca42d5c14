#!/usr/bin/env python3
"""Sweep the prefix-lexicon size and report corpus accuracy per size.

Word frequencies are domain specific, so there is no universally
sufficient lexicon size; instead of asserting a count this experiment
truncates the shipped lexicon to increasing sizes and reports the
exact-match rate on the bundled corpus at each step.  With a different
corpus, rerun this after regenerating the lexicon with `authorfield
build-lexicon`.
"""

from pathlib import Path

from authorfield.cli import evaluate_corpus
from authorfield.extractor import ExtractConfig
from authorfield.lexicon import LexiconSet

CORPUS = Path(__file__).resolve().parents[1] / "corpus"


def main() -> None:
    full = LexiconSet.default()
    total = len(full.prefixes)
    sizes = sorted({0, 10, 25, 50, 100, 200, 300, total})
    print(f"{'prefixes':>8}  {'exact-match':>11}  {'precision':>9}  {'recall':>7}")
    for size in sizes:
        lex = LexiconSet(
            adparticles=full.adparticles,
            personal_particles=full.personal_particles,
            prefixes=full.prefixes[:size],
        )
        report = evaluate_corpus(CORPUS, ExtractConfig(lexicons=lex))
        print(
            f"{size:>8}  {report.exact_match_rate:>11.3f}  "
            f"{report.precision:>9.3f}  {report.recall:>7.3f}"
        )


if __name__ == "__main__":
    main()

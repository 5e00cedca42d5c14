"""Command-line surface: extract, encode, build-lexicon, evaluate.

Output formats are pinned so downstream tooling can rely on them: JSON
results carry ``authors`` (each with given, initials, surname, raw and a
source span), ``variant`` and ``warnings``; TSV has a header row and one
author per line.  Zero authors is a successful outcome at the process
level, title-only pages being legitimate inputs.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .encoder import encode
from .extractor import AuthorName, ExtractConfig, ExtractionResult, extract
from .lexicon import (
    LexiconError,
    LexiconSet,
    build_prefix_lexicon,
    load_frequency_list,
    load_lexicon,
)
from .templates import get_variant, match_authors

_SCAPE_IDS = ("S1", "S2", "S3", "S4")
_TSV_HEADER = ("given", "initials", "surname", "raw")


def author_to_dict(author: AuthorName) -> dict:
    return {
        "given": list(author.given),
        "initials": list(author.initials),
        "surname": author.surname,
        "raw": author.raw,
        "span": {"start": author.span[0], "end": author.span[1]},
    }


def result_to_dict(result: ExtractionResult) -> dict:
    return {
        "authors": [author_to_dict(a) for a in result.authors],
        "variant": result.variant_used,
        "warnings": list(result.warnings),
    }


def _escape_field(value: str) -> str:
    return (
        value.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n").replace("\r", "\\r")
    )


def _tsv_rows(result: ExtractionResult) -> list[list[str]]:
    rows = []
    for a in result.authors:
        rows.append(
            [
                _escape_field(" ".join(a.given)),
                _escape_field(" ".join(a.initials)),
                _escape_field(a.surname),
                _escape_field(a.raw),
            ]
        )
    return rows


def cmd_extract(paths: list[str], fmt: str, config: ExtractConfig, out=None) -> int:
    """Extract authors from each input file, in argument order.

    Unreadable files produce a per-file error record; the exit status is
    nonzero only when every input fails.  A single JSON input prints one
    bare result object; several inputs print one object per line with the
    path added.
    """
    out = out or sys.stdout
    results: list[tuple[str, ExtractionResult | None, str | None]] = []
    failures = 0
    for path in paths:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeError) as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            results.append((path, None, str(exc)))
            failures += 1
            continue
        results.append((path, extract(text, config), None))

    if fmt == "json":
        if len(results) == 1:
            path, result, error = results[0]
            payload = {"path": path, "error": error} if error else result_to_dict(result)
            print(json.dumps(payload, ensure_ascii=False, indent=2), file=out)
        else:
            for path, result, error in results:
                if error:
                    payload = {"path": path, "error": error}
                else:
                    payload = {"path": path, **result_to_dict(result)}
                print(json.dumps(payload, ensure_ascii=False), file=out)
    else:
        multi = len(results) > 1
        header = ("path", *_TSV_HEADER) if multi else _TSV_HEADER
        print("\t".join(header), file=out)
        for path, result, error in results:
            if error:
                continue
            for row in _tsv_rows(result):
                print("\t".join([path, *row] if multi else row), file=out)
    return 2 if failures == len(paths) and paths else 0


def cmd_encode(path: str, show_spans: bool, config: ExtractConfig, out=None) -> int:
    """Print the code string for one file; --spans adds a symbol table."""
    out = out or sys.stdout
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return 1
    enc_cfg = config.lexicons.encoder_config(config.apostrophe_is_letter)
    code = encode(text, enc_cfg)
    print(code.codes, file=out)
    if show_spans:
        print("idx\tcode\tstart\tend\ttext", file=out)
        for i, symbol in enumerate(code.codes):
            start, end = code.spans[i]
            print(f"{i}\t{symbol}\t{start}\t{end}\t{_escape_field(code.text_at(i))}", file=out)
    return 0


def cmd_build_lexicon(
    names_path: str, freq_path: str, top_k: int, output: str | None = None, out=None
) -> int:
    """Derive a prefix lexicon from a name list and a word-frequency list."""
    out = out or sys.stdout
    try:
        names = load_lexicon(Path(names_path).read_text(encoding="utf-8"))
        candidates = load_frequency_list(Path(freq_path).read_text(encoding="utf-8"))
    except (OSError, UnicodeError, LexiconError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    prefixes = build_prefix_lexicon(candidates, names, top_k)
    body = "".join(f"{p}\n" for p in prefixes)
    if output:
        Path(output).write_text(body, encoding="utf-8")
    else:
        out.write(body)
    return 0


@dataclass
class CorpusCase:
    """One golden case: an input page and its expected ordered authors."""

    name: str
    input_path: Path
    expected: list[tuple[tuple[str, ...], tuple[str, ...], str]] | None
    tags: tuple[str, ...]
    error: str | None = None


@dataclass
class CaseResult:
    name: str
    passed: bool
    invalid: bool
    predicted: list[tuple[tuple[str, ...], tuple[str, ...], str]]
    expected: list[tuple[tuple[str, ...], tuple[str, ...], str]]
    detail: str = ""


@dataclass
class EvalReport:
    """Corpus evaluation outcome: per-case results plus aggregates."""

    cases: list[CaseResult]
    exact_match_rate: float
    precision: float
    recall: float
    coverage: dict[str, tuple[str, ...]]

    @property
    def passed(self) -> bool:
        return bool(self.cases) and all(c.passed for c in self.cases)

    def render(self) -> str:
        lines = []
        for case in self.cases:
            if case.invalid:
                lines.append(f"INVALID {case.name} ({case.detail})")
            elif case.passed:
                lines.append(f"PASS    {case.name}")
            else:
                lines.append(f"FAIL    {case.name} ({case.detail})")
        total = len(self.cases)
        good = sum(1 for c in self.cases if c.passed)
        lines.append(f"cases: {total}  passed: {good}  failed: {total - good}")
        lines.append(f"exact-match rate: {self.exact_match_rate:.3f}")
        lines.append(f"precision: {self.precision:.3f}  recall: {self.recall:.3f}")
        lines.append("coverage:")
        for key in sorted(self.coverage):
            names = ", ".join(self.coverage[key])
            lines.append(f"  {key:<20} {names}")
        return "\n".join(lines)


def _valid_tags() -> frozenset[str]:
    tags = set(_SCAPE_IDS)
    for tag in ("lower", "upper"):
        tags.update(f"{tag}:{alt.rule_id}" for alt in get_variant(tag).alternatives)
    return frozenset(tags)


def load_corpus_case(input_path: Path) -> CorpusCase:
    name = input_path.stem
    expected_path = input_path.with_suffix(".json")
    if not expected_path.exists():
        return CorpusCase(name, input_path, None, (), error="missing expectation file")
    try:
        payload = json.loads(expected_path.read_text(encoding="utf-8"))
        expected = [
            (tuple(a.get("given", [])), tuple(a.get("initials", [])), a["surname"])
            for a in payload["authors"]
        ]
        tags = tuple(payload.get("tags", []))
    except (ValueError, KeyError, TypeError) as exc:
        return CorpusCase(name, input_path, None, (), error=f"bad expectation file: {exc}")
    unknown = [t for t in tags if t not in _valid_tags()]
    if unknown:
        return CorpusCase(name, input_path, None, tags, error=f"unknown tags: {unknown}")
    return CorpusCase(name, input_path, expected, tags)


def _author_key(author: AuthorName) -> tuple[tuple[str, ...], tuple[str, ...], str]:
    return (author.given, author.initials, author.surname)


def _observed_alternatives(result: ExtractionResult, config: ExtractConfig) -> set[str]:
    """Re-derive which author alternative each extracted name matched."""
    enc_cfg = config.lexicons.encoder_config(config.apostrophe_is_letter)
    variant = get_variant(result.variant_used)
    observed = set()
    for author in result.authors:
        code = encode(author.raw, enc_cfg)
        matches = match_authors(code, variant)
        if len(matches) == 1 and (matches[0].start, matches[0].end) == (1, len(code.codes) - 1):
            observed.add(f"{result.variant_used}:{matches[0].rule_id}")
    return observed


def _observed_separators(result: ExtractionResult) -> set[str]:
    observed = set()
    for first, last in result.blocks:
        for a, b in zip(result.authors[first:last], result.authors[first + 1 : last]):
            between = result.encoded.source[a.span[1] : b.span[0]]
            if "," in between:
                observed.add("separator:comma")
            if ";" in between:
                observed.add("separator:semicolon")
            if "&" in between or re.search(r"\band\b", between, re.IGNORECASE):
                observed.add("separator:ampersand")
            if "\n" in between or "\r" in between:
                observed.add("separator:linebreak")
    return observed


def evaluate_corpus(corpus_dir: Path, config: ExtractConfig) -> EvalReport:
    """Run extraction over every corpus case and score it.

    A case is one ``<name>.txt`` input with a ``<name>.json`` expectation
    (same schema as extract output minus diagnostics, plus optional tags
    naming the template alternatives and scape rules it exercises).
    """
    corpus_dir = Path(corpus_dir)
    cases = [load_corpus_case(p) for p in sorted(corpus_dir.glob("*.txt"))]
    results: list[CaseResult] = []
    coverage: dict[str, list[str]] = {}
    tp = predicted_total = expected_total = 0

    for case in cases:
        if case.error is not None:
            results.append(CaseResult(case.name, False, True, [], [], detail=case.error))
            continue
        text = case.input_path.read_text(encoding="utf-8")
        result = extract(text, config)
        predicted = [_author_key(a) for a in result.authors]
        passed = predicted == case.expected
        detail = ""
        if not passed:
            detail = f"expected {len(case.expected)} authors, got {len(predicted)}"
            for i, (exp, got) in enumerate(zip(case.expected, predicted)):
                if exp != got:
                    detail = f"author {i}: expected {exp}, got {got}"
                    break
        results.append(CaseResult(case.name, passed, False, predicted, case.expected, detail))

        overlap = Counter(predicted) & Counter(case.expected)
        tp += sum(overlap.values())
        predicted_total += len(predicted)
        expected_total += len(case.expected)

        observed = _observed_alternatives(result, config)
        observed |= {m.rule_id for m in result.fired_scapes}
        observed |= _observed_separators(result)
        if result.blocks:
            observed.add(f"layout:{len(result.blocks)}-block")
        for key in observed:
            coverage.setdefault(key, []).append(case.name)

    exact = sum(1 for r in results if r.passed) / len(results) if results else 0.0
    precision = tp / predicted_total if predicted_total else 1.0
    recall = tp / expected_total if expected_total else 1.0
    return EvalReport(
        cases=results,
        exact_match_rate=exact,
        precision=precision,
        recall=recall,
        coverage={k: tuple(v) for k, v in coverage.items()},
    )


def cmd_evaluate(corpus_dir: str, config: ExtractConfig, out=None) -> int:
    """Evaluate the golden corpus; nonzero exit unless every case passes."""
    out = out or sys.stdout
    report = evaluate_corpus(Path(corpus_dir), config)
    print(report.render(), file=out)
    if not report.cases:
        print("error: no corpus cases found", file=sys.stderr)
        return 1
    return 0 if report.passed else 1


def _add_lexicon_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--adparticles", metavar="PATH", help="adparticle word list")
    parser.add_argument("--particles", metavar="PATH", help="personal-particle word list")
    parser.add_argument("--prefixes", metavar="PATH", help="common-name prefix list")
    parser.add_argument(
        "--max-gap-lines", type=int, default=7, metavar="N",
        help="max address lines between author blocks (default 7)",
    )
    parser.add_argument(
        "--variant", choices=("lower", "upper", "both"), default="both",
        help="template set order: lower/upper first, or best of both (default)",
    )


def _config_from_args(args: argparse.Namespace) -> ExtractConfig:
    lexicons = LexiconSet.from_files(
        adparticles=args.adparticles,
        personal_particles=args.particles,
        prefixes=args.prefixes,
    )
    policy = {
        "lower": "lower-then-upper",
        "upper": "upper-then-lower",
        "both": "best-of-both",
    }[args.variant]
    return ExtractConfig(
        lexicons=lexicons, max_gap_lines=args.max_gap_lines, variant_policy=policy
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="authorfield",
        description="Extract author names from plain-text title pages.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="extract authors from text files")
    p_extract.add_argument("paths", nargs="+", metavar="FILE")
    p_extract.add_argument("--format", choices=("json", "tsv"), default="json")
    _add_lexicon_flags(p_extract)

    p_encode = sub.add_parser("encode", help="dump the code string for a text file")
    p_encode.add_argument("path", metavar="FILE")
    p_encode.add_argument("--spans", action="store_true", help="add a per-symbol span table")
    _add_lexicon_flags(p_encode)

    p_build = sub.add_parser("build-lexicon", help="derive a prefix lexicon")
    p_build.add_argument("names", metavar="NAMES", help="author-name list, one per line")
    p_build.add_argument("frequencies", metavar="FREQS", help="word<TAB>count list")
    p_build.add_argument("--top-k", type=int, default=450, metavar="K")
    p_build.add_argument("--output", "-o", metavar="PATH", help="write here instead of stdout")

    p_eval = sub.add_parser("evaluate", help="run the golden-corpus evaluation")
    p_eval.add_argument("corpus_dir", metavar="DIR")
    _add_lexicon_flags(p_eval)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "extract":
            return cmd_extract(args.paths, args.format, _config_from_args(args))
        if args.command == "encode":
            return cmd_encode(args.path, args.spans, _config_from_args(args))
        if args.command == "build-lexicon":
            return cmd_build_lexicon(args.names, args.frequencies, args.top_k, args.output)
        if args.command == "evaluate":
            return cmd_evaluate(args.corpus_dir, _config_from_args(args))
    except (OSError, LexiconError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())

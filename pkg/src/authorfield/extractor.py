"""End-to-end author extraction: encode, mask, match layouts, decode names."""

from __future__ import annotations

from dataclasses import dataclass, field

from .encoder import CodeString, encode
from .lexicon import LexiconSet
from .templates import (
    LOWER,
    NAME_SYMBOLS,
    UPPER,
    BlockMatch,
    CodeMatch,
    apply_scape_masks,
    match_multi_block,
)

VARIANT_POLICIES = ("best-of-both", "lower-then-upper", "upper-then-lower")


@dataclass(frozen=True)
class ExtractConfig:
    """Knobs for the extraction pipeline.

    ``variant_policy`` decides how the two template sets combine:
    best-of-both runs both and keeps whichever finds more authors (the
    lower set on a tie); the sequential policies run the second set only
    when the first finds nothing.
    """

    lexicons: LexiconSet = field(default_factory=LexiconSet.default)
    max_gap_lines: int = 7
    max_blocks: int = 32
    variant_policy: str = "best-of-both"
    apostrophe_is_letter: bool = True

    def __post_init__(self) -> None:
        if self.max_gap_lines < 0:
            raise ValueError("max_gap_lines must be >= 0")
        if self.max_blocks < 1:
            raise ValueError("max_blocks must be >= 1")
        if self.variant_policy not in VARIANT_POLICIES:
            raise ValueError(f"variant_policy must be one of {VARIANT_POLICIES}")


@dataclass(frozen=True)
class AuthorName:
    """A structured person name in natural order (given names first).

    ``raw`` is the verbatim source slice; all-uppercase tokens appear
    normalized (first letter upper, rest lower, per word) in ``given`` and
    ``surname`` while ``raw`` keeps the original casing.  Annexed
    particles stay attached to their word ("van Gogh").
    """

    given: tuple[str, ...]
    initials: tuple[str, ...]
    surname: str
    raw: str
    span: tuple[int, int]


@dataclass(frozen=True)
class ExtractionResult:
    """Authors plus everything needed to see why they were (or not) found.

    ``blocks`` holds per-block index ranges into ``authors``; ``encoded``
    is the code string after scape masking, which is what layout matching
    ran against.
    """

    authors: tuple[AuthorName, ...]
    blocks: tuple[tuple[int, int], ...]
    variant_used: str
    fired_scapes: tuple[CodeMatch, ...]
    encoded: CodeString
    warnings: tuple[str, ...]


def parse_author_span(match: CodeMatch, code: CodeString) -> AuthorName:
    """Split a matched author span into given names, initials and surname.

    The last name token is the surname, every earlier name token a given
    name, and every 'I' contributes one initial (its period is part of the
    initial and skipped).
    """
    names: list[tuple[str, str]] = []
    initials: list[str] = []
    for i in range(match.start, match.end):
        symbol = code.codes[i]
        if symbol in NAME_SYMBOLS:
            names.append((symbol, code.text_at(i)))
        elif symbol == "I":
            initials.append(code.text_at(i))
        else:
            assert symbol == "p", f"unexpected symbol {symbol!r} inside an author span"
    assert names and code.codes[match.end - 1] in NAME_SYMBOLS, (
        "author span must end with a name token"
    )
    surname_symbol, surname_text = names[-1]
    given = tuple(_normalize_caps(t) if s == "N" else t for s, t in names[:-1])
    surname = _normalize_caps(surname_text) if surname_symbol == "N" else surname_text
    start = code.spans[match.start][0]
    end = code.spans[match.end - 1][1]
    return AuthorName(given, tuple(initials), surname, code.source[start:end], (start, end))


def _normalize_caps(text: str) -> str:
    # per letter-run so "VAN GOGH" -> "Van Gogh" and "O'BRIEN" -> "O'Brien"
    out = []
    run_start = True
    for ch in text:
        if ch.isalpha():
            out.append(ch.upper() if run_start else ch.lower())
            run_start = False
        else:
            out.append(ch)
            run_start = True
    return "".join(out)


def extract(text: str, config: ExtractConfig | None = None) -> ExtractionResult:
    """Extract the ordered author list from a plain-text title page.

    Pipeline: encode (with particle annexation and prefix lowercasing),
    apply scape masks, match the multi-block layout with each template set
    per the variant policy, then decode matched spans into names.  An
    empty author list is a valid result.
    """
    cfg = config or ExtractConfig()
    enc_cfg = cfg.lexicons.encoder_config(apostrophe_is_letter=cfg.apostrophe_is_letter)
    masked, fired = apply_scape_masks(encode(text, enc_cfg))
    variant, blocks = _choose_variant(masked, cfg)

    authors: list[AuthorName] = []
    ranges: list[tuple[int, int]] = []
    for block in blocks:
        first = len(authors)
        authors.extend(parse_author_span(m, masked) for m in block.authors)
        ranges.append((first, len(authors)))
    warnings = _unmatched_name_warnings(masked, blocks)
    return ExtractionResult(
        authors=tuple(authors),
        blocks=tuple(ranges),
        variant_used=variant,
        fired_scapes=tuple(fired),
        encoded=masked,
        warnings=tuple(warnings),
    )


def _choose_variant(masked: CodeString, cfg: ExtractConfig) -> tuple[str, list[BlockMatch]]:
    def run(variant):
        return match_multi_block(masked, variant, cfg.max_gap_lines, cfg.max_blocks)

    def count(blocks):
        return sum(len(b.authors) for b in blocks)

    if cfg.variant_policy == "lower-then-upper":
        blocks = run(LOWER)
        return ("lower", blocks) if count(blocks) else ("upper", run(UPPER))
    if cfg.variant_policy == "upper-then-lower":
        blocks = run(UPPER)
        return ("upper", blocks) if count(blocks) else ("lower", run(LOWER))
    lower, upper = run(LOWER), run(UPPER)
    if count(upper) > count(lower):
        return "upper", upper
    return "lower", lower


def _unmatched_name_warnings(code: CodeString, blocks: list[BlockMatch]) -> list[str]:
    """Flag name-like lines no template matched (e.g. four-word names)."""
    covered = [False] * len(code.codes)
    for block in blocks:
        for author in block.authors:
            for i in range(author.start, author.end):
                covered[i] = True
    warnings = []
    codes = code.codes
    i, n = 0, len(codes)
    while i < n:
        if codes[i] == "L":
            i += 1
            continue
        j = i
        while j < n and codes[j] != "L":
            j += 1
        line = codes[i:j]
        name_count = sum(1 for c in line if c in NAME_SYMBOLS)
        if (
            set(line) <= set("nNIp")
            and name_count > 3
            and not any(covered[k] for k in range(i, j))
        ):
            start, end = code.spans[i][0], code.spans[j - 1][1]
            warnings.append(
                f"line at source [{start}:{end}] looks like {name_count} name words "
                "but matched no author template"
            )
        i = j
    return warnings

"""Author, block and scape pattern matching over code strings.

Two author template sets exist: the "lower" set, whose names end in a
capitalized word, and the "upper" set, whose names end in an all-uppercase
word.  Each set has eleven alternatives built from name words, optional
initials ("I" with an optional trailing period) and, in the upper set, a
name class that accepts either capitalization.

A block is a line-delimited run of authors separated by commas,
semicolons, '&' or line breaks; the line break that closes a block is
required but never consumed, so it can open the next block.  Scape rules
rewrite capitalized title-continuation words to 'w' before any block
matching happens.

Matching is leftmost with alternatives tried longest-first, and blocks
backtrack exactly the way a conventional regex engine evaluates
``LA([,;&L]+A)*(?=L)``; the test suite checks this equivalence against a
literal ``re`` transcription on random code strings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .encoder import CodeString

SEPARATOR_SYMBOLS = frozenset(",;&L")
NAME_SYMBOLS = frozenset("nN")

# Alternative elements: "n"/"N" literal name symbols, "m" the class [nN],
# "i" an initial (I with an optional period).
_NOTATION = {"n": "n", "N": "N", "m": "[nN]", "i": "I"}

_LOWER_LISTING = ("nin", "niin", "in", "inn", "iin", "iiin", "ninn", "nnin", "iinn", "nn", "nnn")
_UPPER_LISTING = ("miN", "miiN", "iN", "imN", "iiN", "iiiN", "mimN", "mNiN", "iimN", "mN", "mmN")


@dataclass(frozen=True)
class _Alternative:
    rule_id: str
    elements: tuple[str, ...]

    @property
    def max_len(self) -> int:
        return sum(2 if el == "i" else 1 for el in self.elements)


def _compile(listing: tuple[str, ...]) -> tuple[_Alternative, ...]:
    alts = [
        _Alternative("".join(_NOTATION[el] for el in elements), tuple(elements))
        for elements in listing
    ]
    # longest-possible first; the stable sort keeps listing order on ties
    return tuple(sorted(alts, key=lambda a: -a.max_len))


@dataclass(frozen=True)
class PatternVariant:
    """One of the two author template sets, compiled for matching."""

    tag: str
    alternatives: tuple[_Alternative, ...]


LOWER = PatternVariant("lower", _compile(_LOWER_LISTING))
UPPER = PatternVariant("upper", _compile(_UPPER_LISTING))


def get_variant(tag: str) -> PatternVariant:
    try:
        return {"lower": LOWER, "upper": UPPER}[tag]
    except KeyError:
        raise ValueError(f"unknown variant {tag!r}, expected 'lower' or 'upper'") from None


@dataclass(frozen=True)
class CodeMatch:
    """A half-open symbol-index span and the rule that produced it."""

    start: int
    end: int
    kind: str  # "author" | "block" | "scape-mask"
    rule_id: str


@dataclass(frozen=True)
class BlockMatch:
    """A delimited run of authors plus the separator runs between them.

    ``block_span`` starts at the opening line break and ends at the
    closing one, which is a lookahead and stays unconsumed.
    """

    block_span: CodeMatch
    authors: tuple[CodeMatch, ...]
    separators: tuple[tuple[int, int], ...]


def _author_matches_at(
    codes: str, pos: int, alternatives: tuple[_Alternative, ...]
) -> Iterator[tuple[int, str]]:
    """Yield (end, rule_id) for every alternative matching at ``pos``.

    Alternatives are tried in compiled (longest-first) order; duplicate
    end positions are suppressed.
    """
    n = len(codes)
    seen: set[int] = set()
    for alt in alternatives:
        i = pos
        ok = True
        for el in alt.elements:
            if el == "i":
                if i < n and codes[i] == "I":
                    i += 1
                    if i < n and codes[i] == "p":
                        i += 1
                else:
                    ok = False
                    break
            elif el == "m":
                if i < n and codes[i] in NAME_SYMBOLS:
                    i += 1
                else:
                    ok = False
                    break
            else:
                if i < n and codes[i] == el:
                    i += 1
                else:
                    ok = False
                    break
        if ok and i not in seen:
            seen.add(i)
            yield i, alt.rule_id


def match_authors(code: CodeString, variant: PatternVariant) -> list[CodeMatch]:
    """All non-overlapping, leftmost-longest author matches."""
    codes = code.codes
    out: list[CodeMatch] = []
    pos, n = 0, len(codes)
    while pos < n:
        best: tuple[int, str] | None = None
        for end, rule_id in _author_matches_at(codes, pos, variant.alternatives):
            if best is None or end > best[0]:
                best = (end, rule_id)
        if best is None:
            pos += 1
            continue
        out.append(CodeMatch(pos, best[0], "author", best[1]))
        pos = best[0]
    return out


def _match_block_at(
    codes: str, start: int, alternatives: tuple[_Alternative, ...]
) -> tuple[int, list[tuple[int, int, str]]] | None:
    """Match ``LA([,;&L]+A)*(?=L)`` anchored at ``start``.

    Replays the backtracking a regex engine performs: pairs are consumed
    greedily, a failed pair lets the previous author close the block if
    its lookahead holds, and alternatives are retried longest-first.
    Separator runs are always maximal because no author alternative can
    start on a separator symbol.
    """
    n = len(codes)
    # one frame per author slot: [slot_start, iterator, committed choice]
    frames: list[list] = [[start + 1, _author_matches_at(codes, start + 1, alternatives), None]]
    while frames:
        frame = frames[-1]
        choice = next(frame[1], None)
        frame[2] = choice
        if choice is None:
            frames.pop()
            if not frames:
                return None
            # the pair we descended into failed; the parent may stop here
            parent_end = frames[-1][2][0]
            if codes[parent_end] == "L":
                return parent_end, [(f[0], f[2][0], f[2][1]) for f in frames]
            continue  # parent retries with its next alternative
        end = choice[0]
        run = end
        while run < n and codes[run] in SEPARATOR_SYMBOLS:
            run += 1
        if run > end:
            frames.append([run, _author_matches_at(codes, run, alternatives), None])
            continue
        if end < n and codes[end] == "L":
            return end, [(f[0], f[2][0], f[2][1]) for f in frames]
        # lookahead failed with no separators: try the next alternative
    return None


def match_single_block(code: CodeString, variant: PatternVariant) -> list[BlockMatch]:
    """Every maximal author block, scanned left to right.

    The closing line break is a lookahead: ``codes[block_span.end]`` is
    'L' and remains available to the next block.
    """
    codes = code.codes
    out: list[BlockMatch] = []
    pos, n = 0, len(codes)
    while pos < n:
        if codes[pos] != "L":
            pos += 1
            continue
        hit = _match_block_at(codes, pos, variant.alternatives)
        if hit is None:
            pos += 1
            continue
        end, raw_authors = hit
        authors = tuple(CodeMatch(s, e, "author", rid) for s, e, rid in raw_authors)
        separators = tuple((a.end, b.start) for a, b in zip(authors, authors[1:]))
        out.append(BlockMatch(CodeMatch(pos, end, "block", variant.tag), authors, separators))
        pos = end
    return out


def match_multi_block(
    code: CodeString,
    variant: PatternVariant,
    max_gap_lines: int = 7,
    max_blocks: int = 32,
) -> list[BlockMatch]:
    """The best chain of blocks separated by at most ``max_gap_lines`` lines.

    A line is one 'L' plus the non-'L' symbols after it, so the gap
    between two blocks is the number of 'L' symbols between the end of one
    and the start of the next.  Blocks beyond the gap limit (or past
    ``max_blocks``) start a new chain; the chain with the most authors
    wins, earliest on a tie.
    """
    blocks = match_single_block(code, variant)
    if not blocks:
        return []
    chains: list[list[BlockMatch]] = [[blocks[0]]]
    for prev, cur in zip(blocks, blocks[1:]):
        gap = code.codes.count("L", prev.block_span.end, cur.block_span.start)
        if gap <= max_gap_lines and len(chains[-1]) < max_blocks:
            chains[-1].append(cur)
        else:
            chains.append([cur])
    return list(max(chains, key=lambda ch: sum(len(b.authors) for b in ch)))


_SCAPE_RULES = (
    ("S1", re.compile(r"aL+([nN]{1,2})")),
    ("S2", re.compile(r"a[nNw]&L+([nN]{1,2})")),
    ("S3", re.compile(r":L+([nN]{1,2})")),
    ("S4", re.compile(r"[nN]*&L([nN])L")),
)


def apply_scape_masks(code: CodeString) -> tuple[CodeString, list[CodeMatch]]:
    """Rewrite scaped name symbols to 'w' so they cannot match an author.

    The four rules run in order and repeat until nothing changes.  Only
    the trailing name group of each match is rewritten; length, spans and
    source stay untouched.  Fired rules are reported with the span of
    their full match.
    """
    symbols = list(code.codes)
    fired: list[CodeMatch] = []
    changed = True
    while changed:
        changed = False
        for rule_id, pattern in _SCAPE_RULES:
            snapshot = "".join(symbols)
            for m in pattern.finditer(snapshot):
                for i in range(m.start(1), m.end(1)):
                    symbols[i] = "w"
                fired.append(CodeMatch(m.start(), m.end(), "scape-mask", rule_id))
                changed = True
    return CodeString("".join(symbols), code.spans, code.source), fired

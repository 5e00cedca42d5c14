"""Word lists for the pipeline and the prefix-lexicon builder.

Three lists are needed: adparticles (high-frequency connectives encoded as
'a'), personal particles (annexed to the following word before encoding)
and common-name prefixes (words starting with one are lowercased before
encoding).  Prefixes are derived from a name list and a word-frequency
list so that no prefix ever collides with a known author name.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable

from .encoder import EncoderConfig


class LexiconError(ValueError):
    """Raised for malformed lexicon or frequency files."""


def load_lexicon(text: str) -> list[str]:
    """Parse a word-list file body.

    One entry per line, '#' starts a comment, blank lines are skipped.
    Entries are case-folded and deduplicated, keeping file order.  An
    entry with non-letter characters is rejected with its line number.
    """
    entries: list[str] = []
    seen: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        entry = line.split("#", 1)[0].strip()
        if not entry:
            continue
        if not all(ch.isalpha() for ch in entry):
            raise LexiconError(f"line {lineno}: entry {entry!r} contains non-letter characters")
        folded = entry.casefold()
        if folded not in seen:
            seen.add(folded)
            entries.append(folded)
    return entries


@dataclass(frozen=True)
class PrefixCandidate:
    """A common-word candidate with its corpus frequency."""

    word: str
    frequency: int

    def __post_init__(self) -> None:
        if not self.word:
            raise ValueError("candidate word must be non-empty")
        if self.frequency < 0:
            raise ValueError("candidate frequency must be >= 0")


def load_frequency_list(text: str) -> list[PrefixCandidate]:
    """Parse "word<TAB>count" lines; comment and blank-line rules as above."""
    out: list[PrefixCandidate] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = [p.strip() for p in body.split("\t") if p.strip()]
        if len(parts) != 2:
            raise LexiconError(f"line {lineno}: expected 'word<TAB>count', got {body!r}")
        word, count_text = parts
        if not all(ch.isalpha() for ch in word):
            raise LexiconError(f"line {lineno}: word {word!r} contains non-letter characters")
        try:
            count = int(count_text)
        except ValueError:
            raise LexiconError(f"line {lineno}: bad count {count_text!r}") from None
        if count < 0:
            raise LexiconError(f"line {lineno}: negative count {count}")
        out.append(PrefixCandidate(word.casefold(), count))
    return out


def _prefixes_some(prefix: str, sorted_names: list[str]) -> bool:
    # any name starting with `prefix` is the first name >= prefix
    i = bisect_left(sorted_names, prefix)
    return i < len(sorted_names) and sorted_names[i].startswith(prefix)


def shortest_nonauthor_prefix(word: str, author_names: Iterable[str]) -> str | None:
    """Shortest prefix of ``word`` that prefixes no author name.

    Returns None when every prefix, the whole word included, is a prefix
    of some name; such words stay out of the lexicon so real names are
    never lowercased.
    """
    if not word:
        raise ValueError("word must be non-empty")
    folded = word.casefold()
    names = sorted(set(author_names))
    for k in range(1, len(folded) + 1):
        candidate = folded[:k]
        if not _prefixes_some(candidate, names):
            return candidate
    return None


def build_prefix_lexicon(
    candidates: Iterable[PrefixCandidate],
    author_names: Iterable[str],
    top_k: int,
) -> list[str]:
    """Accumulate candidate frequencies onto their shortest safe prefixes.

    Every candidate with a defined shortest non-author prefix contributes
    its frequency to that prefix; the ``top_k`` heaviest prefixes are
    returned, ties broken lexicographically for reproducibility.
    """
    if top_k < 0:
        raise ValueError("top_k must be >= 0")
    names = sorted({n.casefold() for n in author_names})
    weight: dict[str, int] = {}
    for cand in candidates:
        folded = cand.word.casefold()
        prefix = None
        for k in range(1, len(folded) + 1):
            if not _prefixes_some(folded[:k], names):
                prefix = folded[:k]
                break
        if prefix is None:
            continue
        weight[prefix] = weight.get(prefix, 0) + cand.frequency
    ranked = sorted(weight.items(), key=lambda kv: (-kv[1], kv[0]))
    return [prefix for prefix, _ in ranked[:top_k]]


@dataclass(frozen=True)
class LexiconSet:
    """The three word lists the pipeline needs, case-folded and frozen."""

    adparticles: frozenset[str] = frozenset()
    personal_particles: frozenset[str] = frozenset()
    prefixes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        for entries in (self.adparticles, self.personal_particles, self.prefixes):
            for entry in entries:
                if not entry or not all(ch.isalpha() for ch in entry):
                    raise ValueError(f"lexicon entry {entry!r} must be letters only")
        object.__setattr__(self, "adparticles", frozenset(e.casefold() for e in self.adparticles))
        object.__setattr__(
            self, "personal_particles", frozenset(e.casefold() for e in self.personal_particles)
        )
        object.__setattr__(self, "prefixes", tuple(sorted({e.casefold() for e in self.prefixes})))

    @classmethod
    def default(cls) -> "LexiconSet":
        """The word lists shipped with the package."""
        return _default_lexicons()

    @classmethod
    def from_files(
        cls,
        adparticles: str | None = None,
        personal_particles: str | None = None,
        prefixes: str | None = None,
    ) -> "LexiconSet":
        """Build from lexicon files; unspecified lists fall back to the defaults."""
        base = cls.default()
        return cls(
            adparticles=frozenset(_read_lexicon_file(adparticles))
            if adparticles
            else base.adparticles,
            personal_particles=frozenset(_read_lexicon_file(personal_particles))
            if personal_particles
            else base.personal_particles,
            prefixes=tuple(_read_lexicon_file(prefixes)) if prefixes else base.prefixes,
        )

    def encoder_config(self, apostrophe_is_letter: bool = True) -> EncoderConfig:
        return EncoderConfig(
            adparticles=self.adparticles,
            personal_particles=self.personal_particles,
            prefix_lexicon=self.prefixes,
            apostrophe_is_letter=apostrophe_is_letter,
        )


def _read_lexicon_file(path: str) -> list[str]:
    with open(path, encoding="utf-8") as handle:
        return load_lexicon(handle.read())


@lru_cache(maxsize=1)
def _default_lexicons() -> LexiconSet:
    def read(name: str) -> list[str]:
        data = resources.files("authorfield").joinpath("data", name).read_text("utf-8")
        return load_lexicon(data)

    return LexiconSet(
        adparticles=frozenset(read("adparticles.txt")),
        personal_particles=frozenset(read("particles.txt")),
        prefixes=tuple(read("prefixes.txt")),
    )

"""Tokenization and the 12-symbol code alphabet.

The encoder turns a plain-text page into a compact code string, one symbol
per word, initial, punctuation mark or line break, with an exact span from
every symbol back into the source text.  Capitalization decides the symbol
for words; spaces separate tokens and vanish.

Alphabet::

    N  all-uppercase word          ,  comma
    n  capitalized word            ;  semicolon
    I  single uppercase letter     :  colon
    w  lowercase-led word          &  the conjunction "and"
    p  period                      L  line break
    a  adparticle (of, the, ...)   o  any other symbol
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Literal

CODE_ALPHABET = frozenset("NnIwp,;:&Lao")

_PUNCT_CODES = {".": "p", ",": ",", ";": ";", ":": ":"}

TokenKind = Literal["word", "initial", "punctuation", "linebreak", "other"]


@dataclass(frozen=True)
class EncoderConfig:
    """Word lists and flags the encoder needs.

    Lexicon entries are case-folded at construction and must be non-empty.
    ``apostrophe_is_letter`` keeps names like O'Brien in one token; turn it
    off to treat apostrophes as ordinary symbols.
    """

    adparticles: frozenset[str] = frozenset()
    personal_particles: frozenset[str] = frozenset()
    prefix_lexicon: tuple[str, ...] = ()
    apostrophe_is_letter: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "adparticles", frozenset(_folded(self.adparticles)))
        object.__setattr__(self, "personal_particles", frozenset(_folded(self.personal_particles)))
        object.__setattr__(self, "prefix_lexicon", tuple(dict.fromkeys(_folded(self.prefix_lexicon))))


def _folded(entries: Iterable[str]) -> list[str]:
    out = []
    for entry in entries:
        folded = entry.strip().casefold()
        if not folded:
            raise ValueError("lexicon entries must be non-empty")
        out.append(folded)
    return out


@dataclass(frozen=True)
class Token:
    """One source unit with its span and, once assigned, a code symbol.

    ``class_text`` is the text that drives capitalization rules.  It
    differs from ``text`` after preprocessing: particle annexation points
    it at the head word ("Gogh" in the merged token "van Gogh") and prefix
    lowercasing rewrites its first letter.  ``text`` always stays the
    verbatim source slice.
    """

    kind: TokenKind
    text: str
    span: tuple[int, int]
    code: str | None = None
    class_text: str | None = None

    @property
    def classification_text(self) -> str:
        return self.class_text if self.class_text is not None else self.text


@dataclass(frozen=True)
class CodeString:
    """An encoded text: code symbols plus a parallel source-span table."""

    codes: str
    spans: tuple[tuple[int, int], ...]
    source: str

    def __post_init__(self) -> None:
        if len(self.codes) != len(self.spans):
            raise ValueError("codes and spans must have equal length")
        stray = set(self.codes) - CODE_ALPHABET
        if stray:
            raise ValueError(f"symbols outside the code alphabet: {sorted(stray)!r}")

    def __len__(self) -> int:
        return len(self.codes)

    def text_at(self, index: int) -> str:
        """Source slice behind the symbol at ``index``."""
        start, end = self.spans[index]
        return self.source[start:end]

    @classmethod
    def from_symbols(cls, codes: str) -> "CodeString":
        """Wrap a bare symbol string; spans map each symbol to itself.

        Meant for tests and debugging, where a synthetic code string is
        matched without any underlying page text.
        """
        return cls(codes, tuple((i, i + 1) for i in range(len(codes))), codes)


def _is_word_char(ch: str, apostrophe_is_letter: bool) -> bool:
    # hyphens count as letters so hyphenated names stay in one token
    return ch.isalpha() or ch == "-" or (apostrophe_is_letter and ch in "'’")


def tokenize(text: str, config: EncoderConfig | None = None) -> tuple[Token, ...]:
    """Split text into raw word, punctuation, line-break and other tokens.

    No codes are assigned yet; run the preprocessing steps and ``classify``
    (or just ``encode``) for that.  Whitespace other than line breaks
    separates tokens and produces nothing itself.
    """
    cfg = config or EncoderConfig()
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\r":
            end = i + 2 if text.startswith("\r\n", i) else i + 1
            tokens.append(Token("linebreak", text[i:end], (i, end)))
            i = end
        elif ch == "\n":
            tokens.append(Token("linebreak", ch, (i, i + 1)))
            i += 1
        elif ch.isspace():
            i += 1
        elif _is_word_char(ch, cfg.apostrophe_is_letter):
            start = i
            while i < n and _is_word_char(text[i], cfg.apostrophe_is_letter):
                i += 1
            run = text[start:i]
            if any(c.isalpha() for c in run):
                tokens.append(Token("word", run, (start, i)))
            else:
                # bare hyphens or apostrophes are not words
                for j in range(start, i):
                    tokens.append(Token("other", text[j], (j, j + 1)))
        elif ch in _PUNCT_CODES:
            tokens.append(Token("punctuation", ch, (i, i + 1)))
            i += 1
        else:
            tokens.append(Token("other", ch, (i, i + 1)))
            i += 1
    return tuple(tokens)


def classify_word(word: str, config: EncoderConfig | None = None) -> str:
    """Map one word to its code symbol.

    Priority: the conjunction "and" gives '&'; adparticles give 'a' (the
    lookup is case-insensitive so all-caps title lines keep their
    anchors); then capitalization decides: a single uppercase letter is
    'I', an all-uppercase word 'N', a capitalized word 'n', and anything
    else, a lowercase-led word included, 'w'.
    """
    if not word:
        raise ValueError("cannot classify an empty word")
    cfg = config or EncoderConfig()
    folded = word.casefold()
    if folded == "and":
        return "&"
    if folded in cfg.adparticles:
        return "a"
    if len(word) == 1:
        return "I" if word.isupper() else "w"
    if word.isupper():
        return "N"
    first = _first_letter(word)
    if first is not None and first.isupper() and any(c.islower() for c in word):
        return "n"
    return "w"


def _first_letter(word: str) -> str | None:
    for ch in word:
        if ch.isalpha():
            return ch
    return None


def annex_personal_particles(
    tokens: Iterable[Token],
    config: EncoderConfig,
    *,
    source: str | None = None,
) -> tuple[Token, ...]:
    """Merge runs of personal particles into the word that follows them.

    "Vincent van Gogh" becomes two tokens, the second spanning "van Gogh"
    and classified by the capitalization of "Gogh".  A particle run with
    no following word is left untouched and classified by ordinary rules.

    When ``source`` is given the merged token text is the exact source
    slice; otherwise the member texts are joined with single spaces.
    """
    toks = list(tokens)
    out: list[Token] = []
    i = 0
    while i < len(toks):
        tok = toks[i]
        if tok.kind == "word" and tok.text.casefold() in config.personal_particles:
            j = i
            while (
                j < len(toks)
                and toks[j].kind == "word"
                and toks[j].text.casefold() in config.personal_particles
            ):
                j += 1
            if j < len(toks) and toks[j].kind == "word":
                head = toks[j]
                start, end = tok.span[0], head.span[1]
                if source is not None:
                    text = source[start:end]
                else:
                    text = " ".join(t.text for t in toks[i : j + 1])
                out.append(Token("word", text, (start, end), class_text=head.classification_text))
                i = j + 1
                continue
        out.append(tok)
        i += 1
    return tuple(out)


def apply_prefix_lowercasing(tokens: Iterable[Token], config: EncoderConfig) -> tuple[Token, ...]:
    """Reclassify words starting with a lexicon prefix as lowercase-led.

    Only the classification text changes; source text and spans stay
    untouched.  An empty lexicon is the identity.
    """
    prefixes = frozenset(config.prefix_lexicon)
    if not prefixes:
        return tuple(tokens)
    longest = max(len(p) for p in prefixes)
    out = []
    for tok in tokens:
        if tok.kind == "word":
            base = tok.classification_text
            folded = base.casefold()
            limit = min(len(folded), longest)
            if any(folded[:k] in prefixes for k in range(1, limit + 1)):
                out.append(replace(tok, class_text=base[:1].lower() + base[1:]))
                continue
        out.append(tok)
    return tuple(out)


def classify(tokens: Iterable[Token], config: EncoderConfig | None = None) -> tuple[Token, ...]:
    """Assign a code symbol to every token.

    Word tokens that encode as 'I' get kind "initial"; everything else
    keeps its raw kind.
    """
    cfg = config or EncoderConfig()
    out = []
    for tok in tokens:
        code = _token_code(tok, cfg)
        kind = "initial" if code == "I" else tok.kind
        out.append(replace(tok, code=code, kind=kind))
    return tuple(out)


def _token_code(tok: Token, cfg: EncoderConfig) -> str:
    if tok.kind == "linebreak":
        return "L"
    if tok.kind == "punctuation":
        return _PUNCT_CODES[tok.text]
    if tok.kind == "other":
        return "o"
    return classify_word(tok.classification_text, cfg)


def encode(text: str, config: EncoderConfig | None = None) -> CodeString:
    """Encode text into the 12-symbol alphabet with source spans.

    Pipeline: tokenize, annex personal particles, apply prefix
    lowercasing, classify.  A zero-width line break is added at each text
    boundary unless the adjacent symbol is already a line break, so the
    result always begins and ends with 'L'; the empty text encodes as
    exactly "L".
    """
    cfg = config or EncoderConfig()
    tokens = tokenize(text, cfg)
    tokens = annex_personal_particles(tokens, cfg, source=text)
    tokens = apply_prefix_lowercasing(tokens, cfg)
    tokens = classify(tokens, cfg)

    codes = [tok.code for tok in tokens]
    spans = [tok.span for tok in tokens]
    if not codes or codes[0] != "L":
        codes.insert(0, "L")
        spans.insert(0, (0, 0))
    if codes[-1] != "L":
        codes.append("L")
        spans.append((len(text), len(text)))
    return CodeString("".join(codes), tuple(spans), text)

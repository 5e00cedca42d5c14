"""Author-field extraction from plain-text title pages.

Author segments are recognized purely from capitalization and line-break
patterns: the page is encoded into a 12-symbol alphabet, ambiguous
capitalized title fragments are masked away, and two small template sets
pick out the author lines.  See ``extract`` for the one-call entry point.
"""

from .encoder import (
    CODE_ALPHABET,
    CodeString,
    EncoderConfig,
    Token,
    annex_personal_particles,
    apply_prefix_lowercasing,
    classify,
    classify_word,
    encode,
    tokenize,
)
from .extractor import (
    AuthorName,
    ExtractConfig,
    ExtractionResult,
    extract,
    parse_author_span,
)
from .lexicon import (
    LexiconError,
    LexiconSet,
    PrefixCandidate,
    build_prefix_lexicon,
    load_frequency_list,
    load_lexicon,
    shortest_nonauthor_prefix,
)
from .templates import (
    LOWER,
    UPPER,
    BlockMatch,
    CodeMatch,
    PatternVariant,
    apply_scape_masks,
    get_variant,
    match_authors,
    match_multi_block,
    match_single_block,
)

__version__ = "0.1.0"

__all__ = [
    "CODE_ALPHABET",
    "AuthorName",
    "BlockMatch",
    "CodeMatch",
    "CodeString",
    "EncoderConfig",
    "ExtractConfig",
    "ExtractionResult",
    "LOWER",
    "LexiconError",
    "LexiconSet",
    "PatternVariant",
    "PrefixCandidate",
    "Token",
    "UPPER",
    "annex_personal_particles",
    "apply_prefix_lowercasing",
    "apply_scape_masks",
    "build_prefix_lexicon",
    "classify",
    "classify_word",
    "encode",
    "extract",
    "get_variant",
    "load_frequency_list",
    "load_lexicon",
    "match_authors",
    "match_multi_block",
    "match_single_block",
    "parse_author_span",
    "shortest_nonauthor_prefix",
    "tokenize",
]

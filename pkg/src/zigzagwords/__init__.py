"""Morphic words of polynomial growth and their zigzag representations.

The package revolves around four ways to present the same infinite words:
morphic triples (morphism, start letter, coding), zigzag term lists,
ultimately periodic pairs, and multilinear products.  It analyzes
morphisms (mortality, recursiveness, rank, level, normalization, growth
degree), evaluates and parses zigzag representations, converts between
all four forms, and checks every conversion by prefix expansion.
"""

from .errors import (
    DepthMismatch,
    EmptyString,
    ExponentialGrowth,
    InternalConstructionError,
    NormalizationNotFound,
    NotProlongable,
    ParseError,
    PreconditionViolation,
    SpecFileError,
    StartLetterMissing,
    UnknownLetter,
    UnprintableLetter,
    ZigzagWordsError,
)
from .morphism import (
    Coding,
    Growth,
    Letter,
    MorphicSpec,
    Morphism,
    NormalizedMorphism,
    RankTable,
    Word,
    alphabet,
    default_normalization_cap,
    glyphs,
    word,
)
from .zigzag import (
    Backward,
    Forward,
    Static,
    ZigzagSpec,
    ZigzagTerm,
    block,
    depth,
    expand_zigzag,
    parse_shorthand,
    print_shorthand,
)
from .transforms import (
    MultilinearSpec,
    MultilinearTerm,
    PeriodicSpec,
    list_to_morphism,
    morphic_to_zigzag,
    morphism_to_list,
    multilinear_to_zigzag,
    periodic_to_zigzag,
    zigzag_to_morphic,
    zigzag_to_multilinear,
    zigzag_to_periodic,
)
from .verify import (
    GrowthReport,
    PrefixComparison,
    brute_bounded,
    growth_report,
    prefix_equal,
    prefix_of,
    word_stream,
)

__all__ = [name for name in dir() if not name.startswith("_")]

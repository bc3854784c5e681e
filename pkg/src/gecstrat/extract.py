"""Turn a (source, corrected) token pair into typed edits."""

from __future__ import annotations

from .align import DEFAULT_COSTS, CostConfig, RawEdit, align, merge_alignment
from .classify import Lexicon, classify_edit, default_lexicon
from .m2 import Edit


def raw_edits(source: list[str], target: list[str], cfg: CostConfig = DEFAULT_COSTS) -> list[RawEdit]:
    return merge_alignment(align(source, target, cfg), source, target)


def to_edit(raw: RawEdit, lexicon: Lexicon | None = None, annotator: int = 0) -> Edit:
    return Edit(
        raw.src[0],
        raw.src[1],
        " ".join(raw.replacement),
        classify_edit(raw, lexicon or default_lexicon()),
        annotator,
    )


def extract_edits(
    source: list[str],
    target: list[str],
    cfg: CostConfig = DEFAULT_COSTS,
    lexicon: Lexicon | None = None,
    annotator: int = 0,
) -> list[Edit]:
    lex = lexicon or default_lexicon()
    return [to_edit(r, lex, annotator) for r in raw_edits(source, target, cfg)]

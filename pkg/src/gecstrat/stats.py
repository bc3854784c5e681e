"""Corpus descriptors: error-type distributions and sentence lengths."""

from __future__ import annotations

import fnmatch
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .m2 import M2Sentence, ProficiencyLevel, read_m2

POLICIES = ("first", "all")

# W&I names look like "A.train.gold.bea19.m2" or "wi.B.dev.m2"
_LEVEL_IN_NAME = re.compile(r"(?:^|\.)([ABCN])\.")


@dataclass
class CorpusSummary:
    proficiency: ProficiencyLevel | None
    sentences: int
    tokens: int
    edits: int
    type_counts: Counter = field(default_factory=Counter)

    @property
    def avg_tokens_per_sentence(self) -> float:
        return self.tokens / self.sentences

    @property
    def type_ratios(self) -> dict[str, float]:
        if not self.edits:
            return {}
        return {t: n / self.edits for t, n in self.type_counts.items()}

    def to_dict(self) -> dict:
        return {
            "proficiency": str(self.proficiency) if self.proficiency else None,
            "sentences": self.sentences,
            "tokens": self.tokens,
            "avg_tokens_per_sentence": self.avg_tokens_per_sentence,
            "edits": self.edits,
            "type_counts": dict(sorted(self.type_counts.items())),
            "type_ratios": dict(sorted(self.type_ratios.items())),
        }


def summarize(
    corpus: Iterable[M2Sentence],
    proficiency: ProficiencyLevel | None = None,
    annotator_policy: str = "first",
) -> CorpusSummary:
    if annotator_policy not in POLICIES:
        raise ValueError(f"annotator_policy must be one of {POLICIES}")
    sentences = tokens = 0
    types: Counter = Counter()
    for sent in corpus:
        sentences += 1
        tokens += len(sent.source_tokens)
        if annotator_policy == "first":
            chosen = [sent.first_annotator()] if sent.annotations else []
        else:
            chosen = sorted(sent.annotations)
        for annotator in chosen:
            types.update(str(e.error_type) for e in sent.edits(annotator))
    if not sentences:
        raise ValueError("cannot summarize an empty corpus")
    return CorpusSummary(proficiency, sentences, tokens, sum(types.values()), types)


def top_k_errors(summary: CorpusSummary, k: int) -> list[tuple[str, float]]:
    if k < 1:
        raise ValueError("k must be at least 1")
    ranked = sorted(summary.type_ratios.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:k]


def level_from_name(name: str, patterns: Mapping[str, str] | None = None) -> ProficiencyLevel | None:
    """Infer a proficiency level from a file name.

    ``patterns`` maps glob patterns to level letters and is consulted first.
    """
    for pattern, level in (patterns or {}).items():
        if fnmatch.fnmatch(name, pattern):
            return ProficiencyLevel.parse(level)
    m = _LEVEL_IN_NAME.search(name)
    return ProficiencyLevel(m.group(1)) if m else None


def discover(data_dir: str | Path, patterns: Mapping[str, str] | None = None) -> dict[ProficiencyLevel, list[Path]]:
    """Group the ``*.m2`` files under ``data_dir`` by inferred level."""
    root = Path(data_dir)
    if not root.is_dir():
        raise FileNotFoundError(f"data directory not found: {root}")
    found: dict[ProficiencyLevel, list[Path]] = {}
    for path in sorted(root.rglob("*.m2")):
        level = level_from_name(path.name, patterns)
        if level is not None:
            found.setdefault(level, []).append(path)
    return found


def summarize_files(paths: Iterable[Path], level: ProficiencyLevel | None, policy: str = "first") -> CorpusSummary:
    corpus: list[M2Sentence] = []
    for p in paths:
        corpus.extend(read_m2(p))
    return summarize(corpus, level, policy)

"""Span-based TP/FP/FN scoring with proficiency and error-type strata."""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .align import RawEdit
from .classify import Lexicon, classify_edit
from .errtypes import ErrorType
from .m2 import Edit, M2Sentence, ProficiencyLevel

ALL = "all"
DEFAULT_BETAS = (0.5,)
MODES = ("correction", "detection")


class ScoringError(ValueError):
    pass


@dataclass(frozen=True)
class EvalCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn) < 0:
            raise ValueError(f"negative count in {self}")

    def __add__(self, other: "EvalCounts") -> "EvalCounts":
        return EvalCounts(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)

    @property
    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else 1.0

    @property
    def recall(self) -> float:
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 1.0

    def f(self, beta: float = 0.5) -> float:
        return f_beta(self.precision, self.recall, beta)


def f_beta(p: float, r: float, beta: float) -> float:
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    b2 = beta * beta
    denom = b2 * p + r
    if denom == 0:
        return 0.0
    return (1 + b2) * p * r / denom


@dataclass(frozen=True)
class ScoreRow:
    counts: EvalCounts
    precision: float
    recall: float
    f: dict[float, float]

    @classmethod
    def from_counts(cls, counts: EvalCounts, betas: Iterable[float] = DEFAULT_BETAS) -> "ScoreRow":
        p, r = counts.precision, counts.recall
        return cls(counts, p, r, {b: f_beta(p, r, b) for b in betas})


@dataclass
class SentenceResult:
    counts: EvalCounts
    annotator: int | None
    tp: list[Edit] = field(default_factory=list)  # reference edits that were matched
    fp: list[Edit] = field(default_factory=list)
    fn: list[Edit] = field(default_factory=list)


def _key(edit: Edit, mode: str):
    if mode == "detection":
        return edit.start, edit.end
    return edit.start, edit.end, edit.replacement


def _match(hyp: list[Edit], ref: list[Edit], mode: str):
    pool: dict = defaultdict(list)
    for e in ref:
        pool[_key(e, mode)].append(e)
    tp, fp = [], []
    for h in hyp:
        bucket = pool.get(_key(h, mode))
        if bucket:
            tp.append(bucket.pop(0))
        else:
            fp.append(h)
    matched = {id(e) for e in tp}
    fn = [e for e in ref if id(e) not in matched]
    return tp, fp, fn


def _type_fp(edit: Edit, source: list[str], lexicon: Lexicon | None) -> Edit:
    if isinstance(edit.error_type, ErrorType):
        return edit
    raw = RawEdit(
        (edit.start, edit.end),
        (edit.start, edit.start + len(edit.tokens)),
        tuple(source[edit.start:edit.end]),
        tuple(edit.tokens),
    )
    return Edit(edit.start, edit.end, edit.replacement, classify_edit(raw, lexicon), edit.annotator)


def compare_sentence(
    hyp_edits: list[Edit],
    ref: M2Sentence,
    mode: str = "correction",
    lexicon: Lexicon | None = None,
) -> SentenceResult:
    """Score hypothesis edits against the best-matching reference annotator.

    Each annotator is scored separately; the one with the highest sentence
    F0.5 wins, ties broken by fewer FP, fewer FN, then lower annotator id.
    Hypothesis edits that are not ErrorType-labelled get typed by the
    classifier before being routed into FP strata.
    """
    if mode not in MODES:
        raise ScoringError(f"unknown mode {mode!r}")
    n = len(ref.source_tokens)
    for h in hyp_edits:
        if h.is_noop or not 0 <= h.start <= h.end <= n:
            raise ScoringError(f"hypothesis edit span ({h.start}, {h.end}) outside {n}-token sentence")
    hyp = [e for e in hyp_edits if not e.is_noop]

    candidates = sorted(ref.annotations) or [None]
    best = None
    for annotator in candidates:
        gold = ref.edits(annotator) if annotator is not None else []
        tp, fp, fn = _match(hyp, gold, mode)
        counts = EvalCounts(len(tp), len(fp), len(fn))
        rank = (-counts.f(0.5), counts.fp, counts.fn)
        if best is None or rank < best[0]:
            best = (rank, annotator, tp, fp, fn, counts)
    _, annotator, tp, fp, fn, counts = best
    fp = [_type_fp(e, ref.source_tokens, lexicon) for e in fp]
    return SentenceResult(counts, annotator, tp, fp, fn)


def stratum_key(level: str, label: str | None = None) -> str:
    return level if label is None else f"{level}|{label}"


def split_key(key: str) -> tuple[str, str | None]:
    level, sep, label = key.partition("|")
    return level, (label if sep else None)


@dataclass
class StratifiedReport:
    """Micro-aggregated counts keyed by stratum.

    Keys are ``all`` or a level letter, optionally followed by ``|`` and an
    error type (``A|R:PREP``) or an operation wildcard (``A|R:*``).
    """

    counts: dict[str, EvalCounts]
    betas: tuple[float, ...] = DEFAULT_BETAS

    def row(self, key: str) -> ScoreRow:
        return ScoreRow.from_counts(self.counts.get(key, EvalCounts()), self.betas)

    def keys(self) -> list[str]:
        return sorted(self.counts, key=_key_order)

    def levels(self) -> list[str]:
        return [k for k in self.keys() if split_key(k)[1] is None]

    def check_partition(self) -> None:
        levels = [k for k in self.levels() if k != ALL]
        if ALL in self.counts and levels:
            total = sum((self.counts[k] for k in levels), EvalCounts())
            if total != self.counts[ALL]:
                raise ScoringError(f"level totals {total} differ from 'all' {self.counts[ALL]}")
        for level in self.levels():
            typed = [
                c for k, c in self.counts.items()
                if split_key(k)[0] == level and split_key(k)[1] and not split_key(k)[1].endswith(":*")
            ]
            if typed and sum(typed, EvalCounts()) != self.counts[level]:
                raise ScoringError(f"per-type counts do not sum to the {level} total")

    @classmethod
    def from_counts(cls, counts: Mapping[str, tuple[int, int, int] | EvalCounts], betas=DEFAULT_BETAS):
        return cls({k: v if isinstance(v, EvalCounts) else EvalCounts(*v) for k, v in counts.items()}, tuple(betas))


def _key_order(key: str):
    level, label = split_key(key)
    return (level == ALL, level, label is not None, label or "")


def aggregate(
    per_sentence: Iterable[tuple[SentenceResult, ProficiencyLevel | str]],
    betas: Iterable[float] = DEFAULT_BETAS,
) -> StratifiedReport:
    counts: dict[str, EvalCounts] = defaultdict(EvalCounts)
    seen = False
    for result, level in per_sentence:
        seen = True
        level = str(level)
        for lv in (level, ALL):
            counts[lv] += result.counts
        for bucket, unit in ((result.tp, EvalCounts(1, 0, 0)), (result.fp, EvalCounts(0, 1, 0)), (result.fn, EvalCounts(0, 0, 1))):
            for e in bucket:
                labels = [str(e.error_type)]
                if e.op:
                    labels.append(f"{e.op}:*")
                for lv in (level, ALL):
                    for label in labels:
                        counts[stratum_key(lv, label)] += unit
    if not seen:
        raise ScoringError("nothing to aggregate")
    report = StratifiedReport(dict(counts), tuple(betas))
    report.check_partition()
    return report


_SELECTOR = re.compile(r"^(\*|[MRU]:\*|[^|*\s]+)$")


def label_breakdown(report: StratifiedReport, selector: str, level: str = ALL) -> list[tuple[str, ScoreRow]]:
    """Per-type rows of one level, ordered by descending TP then label.

    ``selector`` is an exact label (``R:DET``), an operation wildcard
    (``M:*``, one summed row) or ``*`` for every populated label.
    """
    if not _SELECTOR.match(selector):
        raise ScoringError(f"malformed selector {selector!r}")
    labels = {
        label: c for k, c in report.counts.items()
        for lv, label in [split_key(k)] if lv == level and label is not None
    }
    if selector == "*":
        chosen = {k: c for k, c in labels.items() if not k.endswith(":*")}
    else:
        chosen = {selector: labels[selector]} if selector in labels else {}
    rows = [(k, ScoreRow.from_counts(c, report.betas)) for k, c in chosen.items()]
    rows.sort(key=lambda kv: (-kv[1].counts.tp, kv[0]))
    return rows

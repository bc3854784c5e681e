"""Glue between hypothesis files, edit extraction and scoring."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .align import DEFAULT_COSTS, CostConfig
from .classify import Lexicon, default_lexicon
from .extract import extract_edits
from .m2 import Edit, M2Sentence, ProficiencyLevel, apply_edits, parse_m2
from .scoring import DEFAULT_BETAS, SentenceResult, StratifiedReport, aggregate, compare_sentence


class EvaluationError(ValueError):
    """Inputs that can be read but do not line up (exit status 1)."""


def read_text_hypotheses(path: str | Path) -> list[list[str]]:
    out = []
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    for n, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if any(ch in line for ch in "\t\x00\x0b\x0c"):
            raise EvaluationError(f"{path}:{n}: malformed hypothesis line (tab or control character)")
        out.append(line.split())
    if out and text.endswith("\n"):
        out.pop()
    return out


def load_hypotheses(path: str | Path, refs: Sequence[M2Sentence]) -> list[list[Edit]]:
    """Read hypothesis edits from an M2 file or a one-sentence-per-line file."""
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        head = fh.read(2)
    if path.suffix == ".m2" or head == "S ":
        sents = parse_m2(path.read_text(encoding="utf-8"))
        _check_count(len(sents), len(refs), path)
        edits = []
        for i, (h, r) in enumerate(zip(sents, refs)):
            if h.source_tokens != r.source_tokens:
                raise EvaluationError(f"{path}: sentence {i + 1} source differs from the reference")
            annotator = h.first_annotator()
            edits.append(h.edits(annotator) if annotator is not None else [])
        return edits
    lines = read_text_hypotheses(path)
    _check_count(len(lines), len(refs), path)
    return hypothesis_edits(refs, lines)


def _check_count(n_hyp: int, n_ref: int, path) -> None:
    if n_hyp != n_ref:
        raise EvaluationError(f"{path}: {n_hyp} hypothesis sentences but {n_ref} reference sentences")


def hypothesis_edits(
    refs: Sequence[M2Sentence],
    hyps: Sequence[Sequence[str]],
    cfg: CostConfig = DEFAULT_COSTS,
    lexicon: Lexicon | None = None,
) -> list[list[Edit]]:
    """Edits turning each reference source into its hypothesis.

    A hypothesis identical to some annotator's correction takes that
    annotator's gold edits, so re-alignment cannot shift edit boundaries.
    """
    lex = lexicon or default_lexicon()
    out = []
    for ref, hyp in zip(refs, hyps):
        hyp = list(hyp)
        gold = _matching_annotation(ref, hyp)
        out.append(gold if gold is not None else extract_edits(ref.source_tokens, hyp, cfg, lex))
    return out


def _matching_annotation(ref: M2Sentence, hyp: list[str]) -> list[Edit] | None:
    for annotator in sorted(ref.annotations):
        edits = ref.edits(annotator)
        try:
            corrected = apply_edits(ref.source_tokens, edits)
        except ValueError:
            continue
        if corrected == hyp:
            return list(edits)
    return None


def score_corpus(
    refs: Sequence[M2Sentence],
    hyp_edits: Sequence[list[Edit]],
    level: ProficiencyLevel | str,
    mode: str = "correction",
    lexicon: Lexicon | None = None,
) -> list[tuple[SentenceResult, str]]:
    _check_count(len(hyp_edits), len(refs), "hypotheses")
    lex = lexicon or default_lexicon()
    return [(compare_sentence(h, r, mode, lex), str(level)) for h, r in zip(hyp_edits, refs)]


def evaluate(
    parts: Sequence[tuple[Sequence[M2Sentence], Sequence[list[Edit]], ProficiencyLevel | str]],
    mode: str = "correction",
    betas=DEFAULT_BETAS,
    lexicon: Lexicon | None = None,
) -> StratifiedReport:
    results = []
    for refs, hyps, level in parts:
        results.extend(score_corpus(refs, hyps, level, mode, lexicon))
    return aggregate(results, betas)

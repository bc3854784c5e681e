"""Reading, writing and applying M2 edit annotations.

An M2 block is one ``S`` line holding the pre-tokenized source sentence and
any number of ``A`` lines::

    S in addition more and more scientists agree with alien really exist
    A 0 1|||R:ORTH|||In|||REQUIRED|||-NONE-|||0

Tokens are exactly the whitespace split of the ``S`` line; nothing here
re-tokenizes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .errtypes import NOOP_TYPE, ErrorType, OpaqueType, parse_type

EMPTY = "-NONE-"
SEP = "|||"


class M2Error(ValueError):
    """Malformed M2 input or an edit list violating M2 invariants."""

    def __init__(self, message: str, line: int | None = None, text: str | None = None):
        self.line = line
        self.text = text
        if line is not None:
            message = f"line {line}: {message}"
            if text is not None:
                message += f": {text!r}"
        super().__init__(message)


class ProficiencyLevel(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    N = "N"  # native

    @classmethod
    def parse(cls, text: str) -> "ProficiencyLevel":
        key = text.strip().upper()
        if len(key) != 1 or key not in cls.__members__:
            raise ValueError(f"not a proficiency level: {text!r}")
        return cls[key]

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Edit:
    start: int
    end: int
    replacement: str
    error_type: ErrorType | OpaqueType
    annotator: int = 0
    required: str = "REQUIRED"
    comment: str = EMPTY

    def __post_init__(self):
        if self.replacement != " ".join(self.replacement.split()):
            raise ValueError(f"replacement is not single-space separated: {self.replacement!r}")
        noop_span = (self.start, self.end) == (-1, -1)
        if noop_span != self.error_type.is_noop:
            raise ValueError("the (-1, -1) span is reserved for noop edits")

    @property
    def is_noop(self) -> bool:
        return self.error_type.is_noop

    @property
    def span(self) -> tuple[int, int]:
        return self.start, self.end

    @property
    def tokens(self) -> list[str]:
        return self.replacement.split()

    @property
    def op(self) -> str | None:
        return self.error_type.op

    def to_m2(self) -> str:
        fields = [
            f"A {self.start} {self.end}",
            str(self.error_type),
            self.replacement or EMPTY,
            self.required,
            self.comment,
            str(self.annotator),
        ]
        return SEP.join(fields)


def noop_edit(annotator: int = 0) -> Edit:
    return Edit(-1, -1, "", NOOP_TYPE, annotator)


@dataclass
class M2Sentence:
    source_tokens: list[str]
    annotations: dict[int, list[Edit]] = field(default_factory=dict)
    origin_line: int = field(default=0, compare=False)

    @property
    def source(self) -> str:
        return " ".join(self.source_tokens)

    def edits(self, annotator: int) -> list[Edit]:
        """Real edits of one annotator (a noop annotation yields none)."""
        return [e for e in self.annotations.get(annotator, []) if not e.is_noop]

    def first_annotator(self) -> int | None:
        return min(self.annotations) if self.annotations else None

    def validate(self) -> None:
        n = len(self.source_tokens)
        for annotator, edits in self.annotations.items():
            if any(e.annotator != annotator for e in edits):
                raise ValueError(f"edit filed under annotator {annotator} carries another id")
            if any(e.is_noop for e in edits):
                if len(edits) != 1:
                    raise ValueError(f"annotator {annotator} mixes noop with other edits")
                continue
            for e in edits:
                if not 0 <= e.start <= e.end <= n:
                    raise ValueError(f"span ({e.start}, {e.end}) outside {n} tokens")
            check_ordered(edits)


def check_ordered(edits: list[Edit]) -> None:
    """Raise ValueError unless edits are sorted by span and non-overlapping."""
    for a, b in zip(edits, edits[1:]):
        if (b.start, b.end) < (a.start, a.end):
            raise ValueError(f"edits out of order: {a.span} before {b.span}")
        if b.start < a.end:
            raise ValueError(f"overlapping edits {a.span} and {b.span}")


def _parse_edit(line: str, lineno: int, n_tokens: int) -> Edit:
    parts = line[2:].split(SEP)
    if len(parts) != 6:
        raise M2Error(f"expected 6 '|||'-separated fields, got {len(parts)}", lineno, line)
    span, etype, repl, required, comment, annotator = parts
    bounds = span.split(" ")
    try:
        start, end = (int(b) for b in bounds)
    except ValueError:
        raise M2Error("span must be two integers", lineno, line) from None
    try:
        annotator_id = int(annotator)
    except ValueError:
        raise M2Error(f"non-integer annotator id {annotator!r}", lineno, line) from None
    if annotator_id < 0:
        raise M2Error("negative annotator id", lineno, line)
    etype_ = parse_type(etype)
    if (start, end) != (-1, -1) and not 0 <= start <= end <= n_tokens:
        raise M2Error(f"span ({start}, {end}) out of range for {n_tokens} tokens", lineno, line)
    repl = repl.strip()
    try:
        return Edit(start, end, "" if repl == EMPTY else repl, etype_, annotator_id, required, comment)
    except ValueError as exc:
        raise M2Error(str(exc), lineno, line) from None


def _finish(sent: M2Sentence, lines: dict[int, int]) -> M2Sentence:
    # ``lines`` maps id(edit) to its line number, so errors point at the culprit
    for annotator, edits in sent.annotations.items():
        edits.sort(key=lambda e: (e.start, e.end))
        if any(e.is_noop for e in edits) and len(edits) != 1:
            raise M2Error(f"annotator {annotator} mixes noop with other edits", max(lines[id(e)] for e in edits))
        for prev, cur in zip(edits, edits[1:]):
            if cur.start < prev.end:
                raise M2Error(
                    f"overlapping edits {prev.span} and {cur.span}",
                    max(lines[id(prev)], lines[id(cur)]),
                )
    return sent


def parse_m2(text: str) -> list[M2Sentence]:
    """Parse M2 text into sentences, in file order."""
    sentences: list[M2Sentence] = []
    current: M2Sentence | None = None
    edit_lines: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            if current is not None:
                sentences.append(_finish(current, edit_lines))
                current = None
            continue
        if line.startswith("S ") or line == "S":
            if current is not None:
                raise M2Error("new S line without a separating blank line", lineno, line)
            current = M2Sentence(line[2:].split(), {}, lineno)
            edit_lines = {}
        elif line.startswith("A "):
            if current is None:
                raise M2Error("A line outside a sentence block", lineno, line)
            edit = _parse_edit(line, lineno, len(current.source_tokens))
            current.annotations.setdefault(edit.annotator, []).append(edit)
            edit_lines[id(edit)] = lineno
        else:
            raise M2Error("line must start with 'S ' or 'A '", lineno, line)
    if current is not None:
        sentences.append(_finish(current, edit_lines))
    return sentences


def serialize_m2(sentences: Iterable[M2Sentence]) -> str:
    blocks = []
    for i, sent in enumerate(sentences, start=1):
        try:
            sent.validate()
        except ValueError as exc:
            raise M2Error(f"sentence {i}: {exc}") from None
        lines = ["S " + " ".join(sent.source_tokens)]
        for annotator in sorted(sent.annotations):
            lines.extend(e.to_m2() for e in sent.annotations[annotator])
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def read_m2(path) -> list[M2Sentence]:
    with open(path, encoding="utf-8") as fh:
        return parse_m2(fh.read())


def apply_edits(source_tokens: list[str], edits: list[Edit]) -> list[str]:
    """Apply one annotator's edits to the source, returning corrected tokens."""
    n = len(source_tokens)
    for e in edits:
        if e.is_noop:
            raise ValueError("noop edits cannot be applied")
        if not 0 <= e.start <= e.end <= n:
            raise ValueError(f"span ({e.start}, {e.end}) exceeds {n} tokens")
    check_ordered(edits)
    out = list(source_tokens)
    # right to left keeps earlier indices valid
    for e in reversed(edits):
        out[e.start:e.end] = e.tokens
    return out

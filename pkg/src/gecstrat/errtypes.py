"""Error type labels of the form ``OP:CATEGORY`` (e.g. ``R:PREP``, ``R:VERB:TENSE``)."""

from __future__ import annotations

from dataclasses import dataclass

OPERATIONS = ("M", "R", "U")

CATEGORIES = (
    "PUNCT",
    "ORTH",
    "PREP",
    "DET",
    "VERB",
    "VERB:TENSE",
    "NOUN",
    "NOUN:NUM",
    "PRON",
    "CONJ",
    "ADJ",
    "ADV",
    "SPELL",
    "WO",
    "OTHER",
)

NOOP = "noop"
UNK = "UNK"


@dataclass(frozen=True, order=True)
class ErrorType:
    op: str
    category: str

    def __post_init__(self):
        if self.op not in OPERATIONS:
            raise ValueError(f"unknown edit operation {self.op!r}")
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown error category {self.category!r}")

    def __str__(self) -> str:
        return f"{self.op}:{self.category}"

    @property
    def is_noop(self) -> bool:
        return False


@dataclass(frozen=True, order=True)
class OpaqueType:
    """A label outside the built-in taxonomy, carried verbatim.

    Used for sentinels (``noop``, ``UNK``) and for full ERRANT labels such as
    ``R:NOUN:INFL`` found in reference files. Never remapped to ``OTHER``.
    """

    raw: str

    def __str__(self) -> str:
        return self.raw

    @property
    def op(self) -> str | None:
        head = self.raw.split(":", 1)[0]
        return head if head in OPERATIONS and ":" in self.raw else None

    @property
    def category(self) -> str:
        return self.raw.split(":", 1)[1] if self.op else self.raw

    @property
    def is_noop(self) -> bool:
        return self.raw == NOOP


def parse_type(text: str) -> ErrorType | OpaqueType:
    op, sep, category = text.partition(":")
    if sep and op in OPERATIONS and category in CATEGORIES:
        return ErrorType(op, category)
    return OpaqueType(text)


NOOP_TYPE = OpaqueType(NOOP)
UNK_TYPE = OpaqueType(UNK)

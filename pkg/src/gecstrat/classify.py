"""Rule-based error typing of raw edits.

Categories are decided by the first matching rule, in this order:

1. PUNCT       every changed token is punctuation
2. ORTH        same text up to case or whitespace (R only)
3. WO          same tokens in a different order (R only)
4. PREP, DET, PRON, CONJ
               closed-class lookup; for R both sides in the same class
5. VERB:TENSE  both sides are forms of one verb, or only auxiliaries change
6. NOUN:NUM    singular/plural of one noun
7. VERB, NOUN, ADJ, ADV
               part-of-speech agreement from the lexicon and suffix rules
8. SPELL       single unknown source token within two character edits
9. OTHER

Rules 7 and 8 approximate what a statistical tagger would give. Reference
files already carry gold labels; this is only used for edits that have none.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .align import RawEdit
from .errtypes import ErrorType

TAGS = ("PREP", "DET", "PRON", "CONJ", "VERB", "NOUN", "ADJ", "ADV", "PUNCT")
CLOSED_CLASSES = ("PREP", "DET", "PRON", "CONJ")
OPEN_CLASSES = ("VERB", "NOUN", "ADJ", "ADV")
REQUIRED_PUNCT = set(". , ; : ! ? ' \" ( ) -".split())

# clause-preserving replacements such as "agree with" -> "agree that"
PREP_REPLACEMENT_EXTRA = frozenset({"that"})

AUXILIARIES = frozenset(
    "am is are was were be been being have has had having do does did will would shall".split()
)

SUFFIX_RULES = (
    ("ly", "ADV"),
    ("tion", "NOUN"), ("sion", "NOUN"), ("ment", "NOUN"), ("ness", "NOUN"),
    ("ity", "NOUN"), ("ism", "NOUN"), ("ship", "NOUN"), ("ance", "NOUN"), ("ence", "NOUN"),
    ("ous", "ADJ"), ("ful", "ADJ"), ("ive", "ADJ"), ("able", "ADJ"), ("ible", "ADJ"),
    ("less", "ADJ"), ("ical", "ADJ"), ("ish", "ADJ"),
    ("ize", "VERB"), ("ise", "VERB"), ("ify", "VERB"),
    ("ed", "VERB"), ("ing", "VERB"),
)

IRREGULAR_PLURALS = {
    "man": "men", "woman": "women", "child": "children", "person": "people",
    "foot": "feet", "tooth": "teeth", "mouse": "mice", "life": "lives", "wife": "wives",
}


class LexiconError(ValueError):
    def __init__(self, message: str, row: int | None = None):
        self.row = row
        super().__init__(f"row {row}: {message}" if row is not None else message)


@dataclass(frozen=True, eq=False)
class Lexicon:
    tags: dict[str, frozenset[str]]
    verb_forms: dict[str, frozenset[str]] = field(default_factory=dict)  # form -> bases

    def has(self, word: str, tag: str) -> bool:
        return tag in self.tags.get(word.lower(), ())

    def is_preposition(self, word: str) -> bool:
        return self.has(word, "PREP")

    def is_punct(self, token: str) -> bool:
        if self.has(token, "PUNCT"):
            return True
        return bool(token) and all(not ch.isalnum() for ch in token)

    def knows(self, word: str) -> bool:
        w = word.lower()
        return w in self.tags or w in self.verb_forms

    def is_known_verb(self, word: str) -> bool:
        w = word.lower()
        return self.has(w, "VERB") or w in self.verb_forms


def _read_tsv_rows(text: str, origin: str):
    for n, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise LexiconError(f"{origin}: expected 'word<TAB>TAG'", n)
        word, tag = parts[0].strip().lower(), parts[1].strip().upper()
        if tag not in TAGS:
            raise LexiconError(f"{origin}: unknown tag {tag!r}", n)
        yield word, tag


def _bundled(name: str) -> str:
    return resources.files("gecstrat").joinpath("data", name).read_text(encoding="utf-8")


def _verb_table() -> dict[str, frozenset[str]]:
    forms: dict[str, set[str]] = {}
    for line in _bundled("irregular_verbs.tsv").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        base, past, participle = line.split("\t")
        for form in [base, *past.split("/"), *participle.split("/")]:
            forms.setdefault(form, set()).add(base)
    return {k: frozenset(v) for k, v in forms.items()}


def load_lexicon(path: str | Path | None = None) -> Lexicon:
    """Load the bundled lexicon, optionally extended by a user TSV file.

    A word listed in the user file takes exactly the tags given there.
    """
    tags: dict[str, set[str]] = {}
    for word, tag in _read_tsv_rows(_bundled("lexicon.tsv"), "lexicon.tsv"):
        tags.setdefault(word, set()).add(tag)
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise LexiconError(f"cannot read lexicon {path}: {exc}") from exc
        override: dict[str, set[str]] = {}
        for word, tag in _read_tsv_rows(text, str(path)):
            override.setdefault(word, set()).add(tag)
        tags.update(override)
    return Lexicon({w: frozenset(t) for w, t in tags.items()}, _verb_table())


_DEFAULT: Lexicon | None = None


def default_lexicon() -> Lexicon:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_lexicon()
    return _DEFAULT


def edit_op(edit: RawEdit) -> str:
    if not edit.source_tokens:
        return "M"
    if not edit.replacement:
        return "U"
    return "R"


def _strip_candidates(word: str) -> set[str]:
    out = set()
    if word.endswith("ied") and len(word) > 4:
        out.add(word[:-3] + "y")
    for suffix in ("ed", "ing"):
        if word.endswith(suffix) and len(word) > len(suffix) + 1:
            stem = word[: -len(suffix)]
            out.update({stem, stem + "e"})
            if len(stem) > 2 and stem[-1] == stem[-2]:
                out.add(stem[:-1])
    return out


@lru_cache(maxsize=65536)
def _verb_lemmas(word: str, lex: Lexicon) -> frozenset[str]:
    w = word.lower()
    lemmas = {w} | set(lex.verb_forms.get(w, ()))
    for cand in _strip_candidates(w):
        if len(cand) >= 2 and not any(lex.has(cand, c) for c in CLOSED_CLASSES):
            lemmas.add(cand)
            lemmas.update(lex.verb_forms.get(cand, ()))
    for suffix, repl in (("ies", "y"), ("es", ""), ("s", "")):
        if w.endswith(suffix) and len(w) > len(suffix) + 1:
            cand = w[: -len(suffix)] + repl
            if lex.is_known_verb(cand):
                lemmas.add(cand)
    return frozenset(lemmas)


def verb_lemmas(word: str, lex: Lexicon) -> set[str]:
    return set(_verb_lemmas(word.lower(), lex))


def _same_verb(a: str, b: str, lex: Lexicon) -> bool:
    a, b = a.lower(), b.lower()
    if a == b:
        return False
    la, lb = verb_lemmas(a, lex), verb_lemmas(b, lex)
    if not la & lb:
        return False
    # shared lemma must be a known verb unless a verbal suffix was stripped
    return any(lex.is_known_verb(x) or x in lex.verb_forms for x in la & lb) or any(
        _strip_candidates(x) for x in (a, b)
    )


def _plural_pair(a: str, b: str) -> bool:
    a, b = a.lower(), b.lower()
    if a == b:
        return False
    for sing, plur in ((a, b), (b, a)):
        if plur in (sing + "s", sing + "es"):
            return True
        if sing.endswith("y") and plur == sing[:-1] + "ies":
            return True
        if IRREGULAR_PLURALS.get(sing) == plur:
            return True
    return False


def pos_tags(word: str, lex: Lexicon) -> set[str]:
    return set(_pos_tags(word.lower(), lex))


@lru_cache(maxsize=65536)
def _pos_tags(w: str, lex: Lexicon) -> frozenset[str]:
    found = {t for t in lex.tags.get(w, ()) if t in OPEN_CLASSES}
    if w in lex.verb_forms:
        found.add("VERB")
    if found:
        return frozenset(found)
    for lemma in verb_lemmas(w, lex) - {w}:
        if lex.is_known_verb(lemma):
            found.add("VERB")
    for suffix in ("es", "s"):
        if w.endswith(suffix) and lex.has(w[: -len(suffix)], "NOUN"):
            found.add("NOUN")
    if found:
        return frozenset(found)
    for suffix, tag in SUFFIX_RULES:
        if w.endswith(suffix) and len(w) > len(suffix) + 2:
            return frozenset({tag})
    return frozenset()


def levenshtein(a: str, b: str) -> int:
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def _prep_replacement(src: list[str], tgt: list[str], lex: Lexicon) -> bool:
    def ok(w):
        return lex.is_preposition(w) or w.lower() in PREP_REPLACEMENT_EXTRA

    words = src + tgt
    return all(ok(w) for w in words) and any(lex.is_preposition(w) for w in words)


def classify_edit(edit: RawEdit, lexicon: Lexicon | None = None) -> ErrorType:
    lex = lexicon or default_lexicon()
    op = edit_op(edit)
    src, tgt = list(edit.source_tokens), list(edit.replacement)
    present = src if op == "U" else tgt if op == "M" else src + tgt

    if all(lex.is_punct(t) for t in present):
        return ErrorType(op, "PUNCT")

    if op == "R":
        s_low, t_low = [w.lower() for w in src], [w.lower() for w in tgt]
        if s_low == t_low or "".join(s_low) == "".join(t_low):
            return ErrorType(op, "ORTH")
        if Counter(s_low) == Counter(t_low):
            return ErrorType(op, "WO")

    if op == "R" and _prep_replacement(src, tgt, lex):
        return ErrorType(op, "PREP")
    for cls in CLOSED_CLASSES:
        if all(lex.has(w, cls) for w in present):
            return ErrorType(op, cls)

    if all(w.lower() in AUXILIARIES for w in present):
        return ErrorType(op, "VERB:TENSE")
    if op == "R":
        s_core = [w for w in src if w.lower() not in AUXILIARIES]
        t_core = [w for w in tgt if w.lower() not in AUXILIARIES]
        if len(s_core) == 1 and len(t_core) == 1 and _same_verb(s_core[0], t_core[0], lex):
            return ErrorType(op, "VERB:TENSE")
        if len(src) == 1 and len(tgt) == 1 and _plural_pair(src[0], tgt[0]):
            return ErrorType(op, "NOUN:NUM")

    common = None
    for w in present:
        tags = pos_tags(w, lex)
        common = tags if common is None else common & tags
    for tag in OPEN_CLASSES:
        if common and tag in common:
            return ErrorType(op, tag)

    if (
        op == "R"
        and len(src) == 1
        and len(tgt) == 1
        and not lex.knows(src[0])
        and levenshtein(src[0].lower(), tgt[0].lower()) <= 2
    ):
        return ErrorType(op, "SPELL")
    return ErrorType(op, "OTHER")

import pytest

from gecstrat.align import RawEdit
from gecstrat.classify import (
    REQUIRED_PUNCT,
    LexiconError,
    classify_edit,
    default_lexicon,
    edit_op,
    load_lexicon,
)
from gecstrat.errtypes import CATEGORIES, OPERATIONS, ErrorType, OpaqueType, parse_type
from gecstrat.extract import extract_edits


def raw(src: str, tgt: str) -> RawEdit:
    s, t = src.split(), tgt.split()
    return RawEdit((0, len(s)), (0, len(t)), tuple(s), tuple(t))


# hand-labelled edits: (source tokens, replacement tokens, expected type)
GOLDEN = [
 # (source tokens, replacement tokens, expected)
 ("in", "In", "R:ORTH"),
 ("i", "I", "R:ORTH"),
 ("every one", "everyone", "R:ORTH"),
 ("London", "london", "R:ORTH"),
 ("", ",", "M:PUNCT"),
 ("", ".", "M:PUNCT"),
 (",", "", "U:PUNCT"),
 ("!", "", "U:PUNCT"),
 (",", ".", "R:PUNCT"),
 ("", "'", "M:PUNCT"),
 ("with", "that", "R:PREP"),
 ("for", "to", "R:PREP"),
 ("since", "for", "R:PREP"),
 ("in", "on", "R:PREP"),
 ("", "on", "M:PREP"),
 ("", "to", "M:PREP"),
 ("about", "", "U:PREP"),
 ("of", "", "U:PREP"),
 ("", "an", "M:DET"),
 ("", "the", "M:DET"),
 ("a", "the", "R:DET"),
 ("the", "", "U:DET"),
 ("a", "an", "R:DET"),
 ("it's", "its", "R:PRON"),
 ("him", "he", "R:PRON"),
 ("", "it", "M:PRON"),
 ("and", "but", "R:CONJ"),
 ("", "and", "M:CONJ"),
 ("because", "", "U:CONJ"),
 ("dealed", "dealt", "R:VERB:TENSE"),
 ("go", "went", "R:VERB:TENSE"),
 ("is", "was", "R:VERB:TENSE"),
 ("have", "had", "R:VERB:TENSE"),
 ("", "will", "M:VERB:TENSE"),
 ("writed", "wrote", "R:VERB:TENSE"),
 ("alien", "aliens", "R:NOUN:NUM"),
 ("informations", "information", "R:NOUN:NUM"),
 ("child", "children", "R:NOUN:NUM"),
 ("city", "cities", "R:NOUN:NUM"),
 ("alive", "live", "R:OTHER"),
 ("needed", "necessary", "R:OTHER"),
 ("freind", "friend", "R:SPELL"),
 ("ther", "their", "R:SPELL"),
 ("becuase", "because", "R:SPELL"),
 ("time more", "more time", "R:WO"),
 ("good very", "very good", "R:WO"),
 ("house", "home", "R:NOUN"),
 ("", "car", "M:NOUN"),
 ("big", "large", "R:ADJ"),
 ("happy", "", "U:ADJ"),
 ("quickly", "slowly", "R:ADV"),
 ("", "very", "M:ADV"),
 ("", "really", "M:ADV"),
 ("make", "do", "R:VERB"),
 ("", "completely", "M:ADV"),
 ("with everyone", "plain", "R:OTHER"),
]


def test_golden_set_is_large_enough():
    assert len(GOLDEN) >= 40
    labels = {want for _, _, want in GOLDEN}
    for needed in ("M:PUNCT", "R:ORTH", "R:PREP", "R:VERB:TENSE", "M:DET", "R:NOUN:NUM", "R:SPELL", "R:WO"):
        assert needed in labels


@pytest.mark.parametrize("src, tgt, want", GOLDEN)
def test_golden_labels(src, tgt, want):
    assert str(classify_edit(raw(src, tgt))) == want


@pytest.mark.parametrize("src, tgt, op", [("", "a", "M"), ("a", "", "U"), ("a", "b", "R"), ("a b", "c", "R")])
def test_operation_follows_edit_shape(src, tgt, op):
    assert edit_op(raw(src, tgt)) == op
    assert classify_edit(raw(src, tgt)).op == op


def test_example_sentence_types():
    src = "in addition more and more scientists agree with alien really exist".split()
    tgt = "In addition , more and more scientists agree that aliens really exist .".split()
    types = [str(e.error_type) for e in extract_edits(src, tgt)]
    assert types == ["R:ORTH", "M:PUNCT", "R:PREP", "R:NOUN:NUM", "M:PUNCT"]


def test_inserted_that_is_not_a_preposition():
    assert str(classify_edit(raw("", "that"))) != "M:PREP"


def test_exemplar_pair_types():
    src = "Water is needed for alive .".split()
    tgt = "Water is necessary to live .".split()
    assert [str(e.error_type) for e in extract_edits(src, tgt)] == ["R:OTHER", "R:PREP", "R:OTHER"]


def test_required_punctuation_is_recognised():
    lex = default_lexicon()
    for tok in REQUIRED_PUNCT:
        assert lex.is_punct(tok), tok
        assert str(classify_edit(raw("", tok))) == "M:PUNCT"


def test_classifier_is_total():
    for src, tgt in [("xyzzy", "plugh"), ("", "qwerty"), ("42", "")]:
        t = classify_edit(raw(src, tgt))
        assert isinstance(t, ErrorType)
        assert t.category in CATEGORIES


def test_lexicon_override(tmp_path):
    path = tmp_path / "extra.tsv"
    path.write_text("# custom\nplugh\tPREP\nxyzzy\tPREP\n", encoding="utf-8")
    lex = load_lexicon(path)
    assert str(classify_edit(raw("plugh", "xyzzy"), lex)) == "R:PREP"
    assert str(classify_edit(raw("plugh", "xyzzy"))) != "R:PREP"


def test_lexicon_override_replaces_tags(tmp_path):
    path = tmp_path / "extra.tsv"
    path.write_text("for\tNOUN\n", encoding="utf-8")
    lex = load_lexicon(path)
    assert not lex.is_preposition("for")
    assert default_lexicon().is_preposition("for")


@pytest.mark.parametrize("content", ["for PREP\n", "for\tPREP\textra\n", "for\tSOMETHING\n", "\tPREP\n"])
def test_malformed_lexicon_row(tmp_path, content):
    path = tmp_path / "bad.tsv"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(LexiconError) as info:
        load_lexicon(path)
    assert info.value.row == 1
    assert "row 1" in str(info.value)


def test_missing_lexicon_file(tmp_path):
    with pytest.raises(LexiconError):
        load_lexicon(tmp_path / "absent.tsv")


@pytest.mark.parametrize("op", OPERATIONS)
@pytest.mark.parametrize("category", CATEGORIES)
def test_type_string_round_trip(op, category):
    t = ErrorType(op, category)
    assert parse_type(str(t)) == t


def test_opaque_types():
    t = parse_type("R:NOUN:INFL")
    assert isinstance(t, OpaqueType)
    assert t.op == "R" and t.category == "NOUN:INFL"
    assert parse_type("noop").is_noop
    assert parse_type("UNK").op is None
    with pytest.raises(ValueError):
        ErrorType("X", "PREP")
    with pytest.raises(ValueError):
        ErrorType("R", "NOPE")

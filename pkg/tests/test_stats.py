import itertools
import os
import random
from fractions import Fraction

import pytest

from gecstrat.m2 import ProficiencyLevel, parse_m2, read_m2
from gecstrat.stats import discover, level_from_name, summarize, summarize_files, top_k_errors
from published import AVG_TOKENS, TYPE_RATIOS

SYNTHETIC = """S a b c d
A 0 1|||R:PREP|||x|||REQUIRED|||-NONE-|||0
A 2 2|||M:PUNCT|||,|||REQUIRED|||-NONE-|||0

S a b
A 0 0|||M:PUNCT|||.|||REQUIRED|||-NONE-|||0
A 1 2|||U:DET|||-NONE-|||REQUIRED|||-NONE-|||0
A 0 1|||R:NOUN|||y|||REQUIRED|||-NONE-|||1

S a b c
A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||0
"""


def test_synthetic_ratios_exact():
    s = summarize(parse_m2(SYNTHETIC), ProficiencyLevel.A)
    assert s.sentences == 3 and s.tokens == 9 and s.edits == 4
    assert s.avg_tokens_per_sentence == 3.0
    assert s.type_ratios == {"M:PUNCT": 0.5, "R:PREP": 0.25, "U:DET": 0.25}
    assert top_k_errors(s, 1) == [("M:PUNCT", 0.5)]
    # ties are broken alphabetically
    assert top_k_errors(s, 3) == [("M:PUNCT", 0.5), ("R:PREP", 0.25), ("U:DET", 0.25)]


def test_all_annotators_policy():
    s = summarize(parse_m2(SYNTHETIC), annotator_policy="all")
    assert s.edits == 5
    assert s.type_counts["R:NOUN"] == 1
    with pytest.raises(ValueError):
        summarize(parse_m2(SYNTHETIC), annotator_policy="last")


def test_noop_only_corpus():
    s = summarize(parse_m2("S a b\nA -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||0\n"))
    assert s.edits == 0 and s.type_ratios == {}
    assert s.avg_tokens_per_sentence == 2.0
    assert top_k_errors(s, 5) == []


def test_empty_corpus_rejected():
    with pytest.raises(ValueError):
        summarize([])
    with pytest.raises(ValueError):
        top_k_errors(summarize(parse_m2(SYNTHETIC)), 0)


def test_permutation_invariance():
    sents = parse_m2(SYNTHETIC)
    base = summarize(sents).to_dict()
    for perm in itertools.permutations(sents):
        assert summarize(list(perm)).to_dict() == base


def test_fixture_summary_exact(tiny_dir):
    s = summarize(read_m2(tiny_dir / "A.dev.m2"), ProficiencyLevel.A)
    assert (s.sentences, s.tokens, s.edits) == (8, 50, 14)
    assert s.avg_tokens_per_sentence == 6.25
    assert Fraction(s.type_counts["M:PUNCT"], s.edits) == Fraction(3, 14)
    assert s.type_ratios["M:PUNCT"] == 3 / 14
    assert sum(s.type_counts.values()) == s.edits


def test_ratios_sum_to_one(tiny_files):
    for path in tiny_files:
        s = summarize_files([path], None)
        assert sum(s.type_ratios.values()) == pytest.approx(1.0)


def test_level_from_name():
    assert level_from_name("A.train.gold.bea19.m2") is ProficiencyLevel.A
    assert level_from_name("wi.B.dev.m2") is ProficiencyLevel.B
    assert level_from_name("N.dev.gold.bea19.m2") is ProficiencyLevel.N
    assert level_from_name("ABC.train.m2") is None
    assert level_from_name("beginner.m2", {"beginner*": "a"}) is ProficiencyLevel.A


def test_discover(tmp_path, tiny_dir):
    (tmp_path / "sub").mkdir()
    for name in ("A.dev.m2", "B.dev.m2"):
        (tmp_path / "sub" / name).write_text((tiny_dir / name).read_text(encoding="utf-8"), encoding="utf-8")
    (tmp_path / "notes.m2").write_text("", encoding="utf-8")
    groups = discover(tmp_path)
    assert sorted(groups) == [ProficiencyLevel.A, ProficiencyLevel.B]
    with pytest.raises(FileNotFoundError):
        discover(tmp_path / "absent")


def test_shuffled_lines_do_not_change_counts():
    sents = parse_m2(SYNTHETIC)
    rng = random.Random(5)
    for _ in range(10):
        shuffled = sents[:]
        rng.shuffle(shuffled)
        assert summarize(shuffled).type_counts == summarize(sents).type_counts


DATA_DIR = os.environ.get("GECSTRAT_DATA_DIR")


@pytest.mark.skipif(not DATA_DIR, reason="GECSTRAT_DATA_DIR not set; W&I training data not available")
@pytest.mark.parametrize("level", ["A", "B", "C"])
def test_training_data_distribution(level):
    groups = discover(DATA_DIR)
    paths = [p for p in groups.get(ProficiencyLevel(level), []) if ".train." in p.name]
    if not paths:
        pytest.skip(f"no {level} training file under {DATA_DIR}")
    s = summarize_files(paths, ProficiencyLevel(level))
    for label, ratio in TYPE_RATIOS[level].items():
        assert s.type_ratios.get(label, 0.0) == pytest.approx(ratio, abs=5e-4), label
    assert s.avg_tokens_per_sentence == pytest.approx(AVG_TOKENS[level], abs=5e-3)

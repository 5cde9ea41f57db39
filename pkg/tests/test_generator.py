import json

import pytest

from confabga.classifier import AnalyzedToken, Category, classify_token
from confabga.generator import GenSpec, generate, repair_harmony, respell_english, to_jsonl
from confabga.orthography import check_vowel_harmony


def test_respell():
    assert respell_english("photon") == "foton"
    assert respell_english("kilowatt") == "cilobhat"


def test_repair_harmony():
    fixed = repair_harmony("foteni")
    assert check_vowel_harmony(fixed).passed


def test_deterministic(lexicons):
    spec = GenSpec(Category.CODE_SWITCHING, 5, rng_seed=7)
    assert generate(spec, lexicons) == generate(spec, lexicons)


def test_seed_changes_output(lexicons):
    a = generate(GenSpec(Category.COMPOUND, 10, rng_seed=1), lexicons)
    b = generate(GenSpec(Category.COMPOUND, 10, rng_seed=2), lexicons)
    assert [g.word for g in a] != [g.word for g in b]


def test_words_are_oov_and_distinct(lexicons):
    items = generate(GenSpec(Category.PREFIX, 30), lexicons)
    words = [g.word for g in items]
    assert len(set(words)) == len(words)
    assert not any(w in lexicons.irish for w in words)


def test_broken_words_name_their_rule(lexicons):
    items = generate(GenSpec(Category.COMPOUND, 10, well_formed=False), lexicons)
    assert {g.rule_violated for g in items} == {"compound-lenition"}
    for g in items:
        rec = classify_token(AnalyzedToken(g.word), "", lexicons)
        assert not rec.conformant


@pytest.mark.parametrize("pattern", [c for c in Category if c is not Category.UNCLASSIFIED])
def test_small_round_trip(lexicons, pattern):
    for g in generate(GenSpec(pattern, 10, rng_seed=3), lexicons):
        rec = classify_token(AnalyzedToken(g.word), g.source or "", lexicons)
        assert rec.conformant, g.word


def test_spec_validation():
    with pytest.raises(ValueError):
        GenSpec(Category.UNCLASSIFIED, 1)
    with pytest.raises(ValueError):
        GenSpec(Category.COMPOUND, 0)


def test_jsonl(lexicons):
    items = generate(GenSpec(Category.SUFFIX, 3), lexicons)
    rows = [json.loads(line) for line in to_jsonl(items).splitlines()]
    assert [r["word"] for r in rows] == [g.word for g in items]
    assert rows[0]["pattern"] == "Suffix" and rows[0]["conformant"] is True

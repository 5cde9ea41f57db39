import pytest

from confabga.orthography import MutationKind
from confabga.verbmorph import Conjugation, NotAVerb, expected_conjugation, parse_verb, validate_verb, verb_candidates


@pytest.mark.parametrize("root,conj", [("cód", Conjugation.FIRST), ("sraith", Conjugation.FIRST), ("ceannaigh", Conjugation.SECOND)])
def test_expected_conjugation(root, conj):
    assert expected_conjugation(root) is conj


def test_lenited_past_reading(lexicons):
    (a,) = parse_verb("shraitheamar", lexicons.irish)
    assert a.root == "sraith"
    assert a.suffix == "eamar"
    assert a.slot == "Past1Pl"
    assert a.mutation_seen is MutationKind.LENITION


def test_visible_mutation_hides_unmutated_reading(lexicons):
    assert all(a.mutation_seen is MutationKind.LENITION for a in verb_candidates("shraitheamar", lexicons.irish))


@pytest.mark.parametrize("word,reading", [
    ("shraitheamar", "sraith+eamar"),
    ("códálann", "códál+ann"),
    ("Tendeann", "tend+eann"),
])
def test_conformant_verbs(lexicons, word, reading):
    v = validate_verb(word, None, lexicons.irish, lexicons.english)
    assert v.conformant
    assert reading in v.reading


def test_truncated_root_is_violating(lexicons):
    v = validate_verb("chog", None, lexicons.irish, lexicons.english)
    assert v.rule_ids == {"truncated-root"}


def test_missing_prefix_lenition(lexicons):
    v = validate_verb("athsraitheadh", None, lexicons.irish, lexicons.english)
    assert "prefix-lenition" in v.rule_ids


def test_class_disagreement(lexicons):
    # slender root, broad ending
    v = validate_verb("sraithann", None, lexicons.irish, lexicons.english)
    assert "class-agreement" in v.rule_ids


def test_not_a_verb(lexicons):
    assert verb_candidates("madra", lexicons.irish) == []
    with pytest.raises(NotAVerb):
        validate_verb("madra", None, lexicons.irish, lexicons.english)

import pytest

from confabga.nounmorph import (
    PluralStrategy,
    analyze_code_switch,
    analyze_plural,
    analyze_suffixes,
    check_prefix,
    parse_endings,
    seam_harmony_ok,
    split_compound,
    validate_noun,
    well_formed_stem,
)
from confabga.rules import affix_tables


def test_compound_split(lexicons):
    (s,) = split_compound("gaothmhoill", lexicons.irish)
    assert (s.first.form, s.second.form, s.second_surface) == ("gaoth", "moill", "mhoill")
    assert s.second_lenited


def test_vowel_initial_second_element_is_not_a_compound(lexicons):
    # rad + aim would otherwise read as a compound
    assert split_compound("radaim", lexicons.irish) == []


def test_strong_plural(lexicons):
    first = analyze_plural("turasáin", lexicons.irish)[0]
    assert first.strategy is PluralStrategy.STRONG
    assert first.lemma == "turas"


def test_suffix_chain(lexicons):
    (a,) = analyze_suffixes("cuimhneachtaí", lexicons.irish)[:1]
    assert a.lemma == "cuimhne"
    assert [e.form for e, _ in a.endings] == ["e", "acht", "aí"]


def test_parse_endings_alternatives():
    readings = parse_endings("eanna", affix_tables())
    assert ((readings[0][0][0].form),) == ("eanna",)
    assert len(readings) > 1


def test_prefix_with_lenition(lexicons):
    a = check_prefix("comhshamlacha", lexicons.irish)[0]
    assert a.prefix.form == "comh"
    assert a.lenition_expected and a.lenition_present


def test_prefix_without_lenition(lexicons):
    a = check_prefix("athsraitheadh", lexicons.irish)[0]
    assert a.lenition_expected and not a.lenition_present
    assert a.lemma == "sraith"


def test_code_switch_correspondence(lexicons):
    good = analyze_code_switch("simulachtóir", lexicons.english, lexicons.irish)
    assert good[0].english == "simulate" and good[0].truncated
    assert good[0].correspondence_ok
    bad = analyze_code_switch("Simuláid", lexicons.english, lexicons.irish)
    assert bad and not any(a.correspondence_ok for a in bad)


def test_stem_shape():
    assert well_formed_stem("gaoth")
    assert not well_formed_stem("gaoithchumacht")
    assert seam_harmony_ok("gaothmhoill", 5)


@pytest.mark.parametrize("word,rule", [
    ("gaoithchumachta", "harmony"),
    ("titimeanna", "plural-anna-monosyllable"),
    ("dippaí", "geminate"),
    ("Simuláid", "suffix-correspondence"),
])
def test_violations(lexicons, word, rule):
    v = validate_noun(word, lexicons.irish, lexicons.english)
    assert not v.conformant
    assert rule in v.rule_ids


@pytest.mark.parametrize("word", ["gaothmhoill", "turasáin", "laigeas", "cuimhneachtaí"])
def test_conformant(lexicons, word):
    assert validate_noun(word, lexicons.irish, lexicons.english).conformant

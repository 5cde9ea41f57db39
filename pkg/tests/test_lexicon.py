import logging

import pytest

from confabga.lexicon import (
    POS,
    LexiconConfigError,
    LexiconFormatError,
    Lexicons,
    LookupStatus,
    english_root_match,
    english_truncations,
    load_lexicon,
    load_lexicon_path,
    lookup,
    normalize_form,
)
from confabga.orthography import MutationKind
from confabga.rules import affix_tables, verb_suffixes


def test_bundled_sizes(lexicons):
    assert len(lexicons.irish) >= 300
    assert len(lexicons.english) >= 200


def test_normalize_form():
    assert normalize_form("  Gaoth ") == "gaoth"
    assert normalize_form("á") == "á"


def test_exact_lookup(lexicons):
    res = lookup(lexicons.irish, "gaoth")
    assert res.status is LookupStatus.EXACT
    assert res.entry.pos is POS.NOUN


def test_lookup_via_mutation(lexicons):
    res = lookup(lexicons.irish, "ghaoth")
    assert res.status is LookupStatus.VIA_MUTATION
    assert res.mutation is MutationKind.LENITION
    assert res.root == "gaoth"


def test_capitalised_lookup(lexicons):
    assert lookup(lexicons.irish, "Gaoth").found


def test_absent(lexicons):
    res = lookup(lexicons.irish, "gaothmhoill")
    assert res.status is LookupStatus.ABSENT
    assert not res.found


def test_invented_roots_are_not_listed(lexicons):
    # these would hide the invented words built on them
    for form in ("géanóm", "cás", "nasc"):
        assert form not in lexicons.irish


def test_load_tsv_with_warnings(caplog):
    data = "gaoth\tNoun\tnative\nbogus\tNotAPos\nx\ty\tz\tw\nlampa\tNoun\tloan\n".encode()
    with caplog.at_level(logging.WARNING):
        lex = load_lexicon(data, "t")
    assert len(lex) == 2
    assert len(lex.warnings) == 2
    assert not lex.first("lampa").native


def test_load_rejects_bad_utf8():
    with pytest.raises(LexiconFormatError):
        load_lexicon(b"\xff\xfe\x00bad", "bad")


def test_load_rejects_empty():
    with pytest.raises(LexiconConfigError):
        load_lexicon(b"# only a comment\n", "empty")


def test_load_path(tmp_path):
    p = tmp_path / "ga.tsv"
    p.write_text("madra\tNoun\n", encoding="utf-8")
    lex = load_lexicon_path(p)
    assert "madra" in lex
    both = Lexicons.from_paths(irish=p)
    assert "madra" in both.irish and len(both.english) > 100


def test_english_root_match(lexicons):
    assert english_root_match(lexicons.english, "tend") == "tend"
    assert english_root_match(lexicons.english, "simul") is None
    assert english_root_match(lexicons.english, "simul", truncated=True) == "simulate"


def test_english_truncations(lexicons):
    hits = english_truncations(lexicons.english, "simul")
    assert hits[0] == "simulate"
    assert all(h.startswith("simul") for h in hits)


def test_affix_tables_shape():
    t = affix_tables()
    assert {p.form for p in t.prefixes if p.kind == "native"} >= {"ath", "comh", "trí"}
    assert any(e.form == "anna" and e.monosyllabic for e in t.endings)
    assert "óir" in t.correspondences["er"]


def test_verb_suffixes_cover_both_conjugations():
    conj = {s.conjugation for s in verb_suffixes()}
    assert conj == {"First", "Second"}

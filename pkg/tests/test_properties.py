from decimal import Decimal

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from confabga.classifier import phonetic_similarity
from confabga.lexicon import Lexicons
from confabga.orthography import (
    MutationKind,
    apply_lenition,
    apply_mutation,
    detect_and_strip_mutation,
    is_lenitable,
)
from confabga.pipeline import DocumentPair, analyze_document, hallucination_rate, tokenize

LEX = Lexicons.bundled()
ROOTS = sorted(e.form for e in LEX.irish.all_entries() if e.form.isalpha())
IRISH_LETTERS = "abcdefghilmnoprstuáéíóú"

words = st.text(alphabet=IRISH_LETTERS, min_size=1, max_size=12)
roots = st.sampled_from(ROOTS)
sentences = st.lists(st.sampled_from(ROOTS + ["gaothmhoill", "radaim", "Simuláid", "tripléid", ",", "."]), min_size=1, max_size=8).map(" ".join)


@given(roots)
def test_lenition_round_trip(root):
    mutated = apply_lenition(root)
    if is_lenitable(root):
        assert (MutationKind.LENITION, root) in detect_and_strip_mutation(mutated)
    else:
        assert mutated == root


@given(roots)
def test_eclipsis_round_trip(root):
    mutated = apply_mutation(MutationKind.ECLIPSIS, root)
    if mutated != root:
        assert (MutationKind.ECLIPSIS, root) in detect_and_strip_mutation(mutated)


@given(words)
def test_lenition_idempotent(w):
    once = apply_lenition(w)
    assert apply_lenition(once) == once


@given(st.text(max_size=60))
def test_tokenize_fixed_point(text):
    toks = [t.text for t in tokenize(text)]
    assert [t.text for t in tokenize(" ".join(toks))] == toks
    for t in tokenize(text):
        assert text[t.start:t.end] == t.text


@given(st.integers(0, 10_000), st.integers(1, 1_000_000))
def test_rate_never_exceeds_exact(count, tokens):
    rate = hallucination_rate(count, tokens)
    exact = Decimal(1000 * count) / Decimal(tokens)
    assert rate <= exact < rate + Decimal("0.01")


@given(words, words)
def test_similarity_bounded(a, b):
    s = phonetic_similarity(a, b)
    assert 0.0 <= s <= 1.0


@settings(max_examples=30, suppress_health_check=[HealthCheck.too_slow])
@given(st.lists(sentences, min_size=1, max_size=5), st.randoms(use_true_random=False))
def test_sentence_order_does_not_change_counts(tgts, rnd):
    pairs = [("source words", t) for t in tgts]
    shuffled = pairs[:]
    rnd.shuffle(shuffled)
    a = analyze_document(DocumentPair("d", tuple(pairs)), LEX)
    b = analyze_document(DocumentPair("d", tuple(shuffled)), LEX)
    assert a.counts == b.counts
    assert a.token_count == b.token_count
    assert sorted(r.surface for r in a.records) == sorted(r.surface for r in b.records)


@settings(max_examples=30)
@given(st.lists(sentences, min_size=1, max_size=4))
def test_analysis_deterministic(tgts):
    pair = DocumentPair("d", tuple(("src", t) for t in tgts))
    assert analyze_document(pair, LEX) == analyze_document(pair, LEX)

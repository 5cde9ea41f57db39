import pytest

from confabga.orthography import (
    MutationKind,
    UnanalyzableToken,
    VowelClass,
    apply_lenition,
    apply_mutation,
    check_alphabet,
    check_vowel_harmony,
    classify_vowel,
    detect_and_strip_mutation,
    final_quality,
    illegal_geminates,
    initial_quality,
    is_lenitable,
    nfc,
    slenderize,
    syllable_count,
    vowel_groups,
)


@pytest.mark.parametrize("c,cls", [("a", VowelClass.BROAD), ("ú", VowelClass.BROAD), ("é", VowelClass.SLENDER), ("i", VowelClass.SLENDER), ("b", None)])
def test_classify_vowel(c, cls):
    assert classify_vowel(c) is cls


def test_nfc_composes_decomposed_fada():
    assert nfc("á") == "á"
    assert nfc("á") == "á"


def test_alphabet_flags_non_native_letters():
    assert check_alphabet("kilowatt") == {"k", "w"}
    assert check_alphabet("gaoth") == set()


@pytest.mark.parametrize("word,n", [("gaoth", 1), ("turasáin", 3), ("cuimhneachtaí", 3), ("bád", 1)])
def test_syllable_count(word, n):
    assert syllable_count(word) == n


def test_no_vowel_is_unanalyzable():
    with pytest.raises(UnanalyzableToken):
        syllable_count("tsk")
    with pytest.raises(UnanalyzableToken):
        check_vowel_harmony("")
    assert vowel_groups("") == []


def test_qualities():
    assert final_quality("cód") is VowelClass.BROAD
    assert final_quality("sraith") is VowelClass.SLENDER
    assert initial_quality("eanna") is VowelClass.SLENDER
    assert initial_quality("acha") is VowelClass.BROAD


def test_harmony_pair():
    assert check_vowel_harmony("gaothmhoill").passed
    report = check_vowel_harmony("gaoithchumachta")
    assert not report.passed
    v = report.violations[0]
    assert v.cluster == "thch"
    assert (v.left, v.right) == (VowelClass.SLENDER, VowelClass.BROAD)


def test_harmony_exempt_boundary():
    report = check_vowel_harmony("gaoithchumachta")
    start = report.violations[0].start
    assert check_vowel_harmony("gaoithchumachta", exempt={start}).passed


@pytest.mark.parametrize("root,lenited", [("sraith", "shraith"), ("bád", "bhád"), ("fear", "fhear"), ("cód", "chód")])
def test_lenition(root, lenited):
    assert apply_lenition(root) == lenited


@pytest.mark.parametrize("root", ["lámh", "nasc", "rud", "athair", "scoil", "sparán", "stól", "bhád"])
def test_lenition_noop(root):
    assert apply_lenition(root) == root


def test_is_lenitable():
    assert is_lenitable("cás")
    assert is_lenitable("sráid")
    assert not is_lenitable("scoil")
    assert not is_lenitable("uisce")


@pytest.mark.parametrize(
    "word,kind,root",
    [
        ("shráid", MutationKind.LENITION, "sráid"),
        ("gcás", MutationKind.ECLIPSIS, "cás"),
        ("bhfear", MutationKind.ECLIPSIS, "fear"),
        ("n-athair", MutationKind.ECLIPSIS, "athair"),
        ("nAthair", MutationKind.ECLIPSIS, "Athair"),
        ("t-uisce", MutationKind.T_PREFIX, "uisce"),
        ("hÉireann", MutationKind.H_PREFIX, "Éireann"),
    ],
)
def test_detect_mutation(word, kind, root):
    readings = detect_and_strip_mutation(word)
    assert readings[0] == (MutationKind.NONE, word)
    assert (kind, root) in readings


def test_nead_is_not_eclipsis():
    assert all(k is MutationKind.NONE for k, _ in detect_and_strip_mutation("nead"))


def test_bhf_not_read_as_lenition():
    kinds = {k for k, _ in detect_and_strip_mutation("bhfear")}
    assert MutationKind.LENITION not in kinds


def test_apply_eclipsis():
    assert apply_mutation(MutationKind.ECLIPSIS, "cás") == "gcás"
    assert apply_mutation(MutationKind.ECLIPSIS, "athair") == "n-athair"
    assert apply_mutation(MutationKind.NONE, "cás") == "cás"


def test_slenderize():
    assert slenderize("bád") == "báid"


def test_geminates():
    assert illegal_geminates("dippaí") == ["pp"]
    assert illegal_geminates("gaothmhoill") == []

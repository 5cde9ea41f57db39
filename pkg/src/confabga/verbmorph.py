"""Verb parsing against the present/past suffix inventory."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .lexicon import POS, Lexicon, english_truncations, normalize_form
from .orthography import (
    MutationKind,
    NON_NATIVE_LETTERS,
    VowelClass,
    check_vowel_harmony,
    detect_and_strip_mutation,
    final_quality,
    illegal_geminates,
    initial_quality,
    is_lenitable,
    syllable_count,
    vowel_groups,
)
from .rules import RuleVerdict, VerbSuffix, Violation, verb_suffixes


class NotAVerb(ValueError):
    """The word has no verbal-suffix reading at all."""


class Conjugation(str, Enum):
    FIRST = "First"
    SECOND = "Second"


PAST_SLOTS = frozenset({"Past1Pl", "PastAut", "PastAnalytic"})


@dataclass(frozen=True)
class VerbAnalysis:
    root: str
    conjugation: Conjugation
    suffix: str
    suffix_class: VowelClass
    slot: str
    mutation_seen: MutationKind
    # bare stem that only clips a known verb (chog < cogain)
    clipped_from: str | None = None

    @property
    def lenited(self) -> bool:
        return self.mutation_seen is MutationKind.LENITION

    @property
    def past(self) -> bool:
        return self.slot in PAST_SLOTS

    def reconstruct(self) -> str:
        return self.root + self.suffix


def expected_conjugation(root: str) -> Conjugation:
    """One syllable or an -(e)áil/-ál stem: first; other polysyllables: second."""
    if syllable_count(root) == 1 or root.endswith(("áil", "ál")):
        return Conjugation.FIRST
    return Conjugation.SECOND


def _bare_stem(root: str, lex: Lexicon | None) -> str | None:
    # a lenited stem with no ending is only verb-like when it is a known
    # verb or clips one
    if lex is None or len(root) < 3:
        return None
    if lex.has_pos(root, POS.VERB):
        return root
    for w in lex.words_starting_with(root):
        if w != root and lex.has_pos(w, POS.VERB):
            return w
    return None


def verb_candidates(word: str, lex: Lexicon | None = None, suffixes: tuple[VerbSuffix, ...] | None = None) -> list[VerbAnalysis]:
    """Every suffix split of the word, before any agreement filtering."""
    suffixes = suffixes or verb_suffixes()
    w = normalize_form(word)
    out = []
    readings = detect_and_strip_mutation(w)
    mutated = any(k in (MutationKind.LENITION, MutationKind.ECLIPSIS) for k, _ in readings)
    for kind, base in readings:
        if kind not in (MutationKind.NONE, MutationKind.LENITION, MutationKind.ECLIPSIS):
            continue
        # a visibly mutated form is parsed from its radical only
        if kind is MutationKind.NONE and mutated:
            continue
        for s in suffixes:
            if not s.form:
                if kind is not MutationKind.LENITION or not vowel_groups(base):
                    continue
                known = _bare_stem(base, lex)
                if known is None:
                    continue
                out.append(VerbAnalysis(
                    base, expected_conjugation(base), "", final_quality(base), s.slot, kind,
                    clipped_from=None if known == base else known,
                ))
                continue
            if not base.endswith(s.form):
                continue
            root = base[: -len(s.form)]
            if len(root) < 2 or not vowel_groups(root):
                continue
            out.append(VerbAnalysis(
                root, Conjugation(s.conjugation), s.form, initial_quality(s.form), s.slot, kind,
            ))
    return out


def parse_verb(word: str, lex: Lexicon | None = None) -> list[VerbAnalysis]:
    """Suffix readings whose ending class agrees with the root's final vowel."""
    return [a for a in verb_candidates(word, lex) if a.suffix_class == final_quality(a.root)]


def _english_root(root: str, eng: Lexicon | None) -> tuple[bool, bool]:
    """(whole English word, clipped English word)."""
    if eng is None:
        return False, False
    if root in eng:
        return True, False
    return False, bool(english_truncations(eng, root, ratio=0.4))


def _failures(a: VerbAnalysis, lex: Lexicon | None, eng: Lexicon | None) -> list[Violation]:
    out = []
    root = a.root
    if a.suffix_class != final_quality(root):
        out.append(Violation("class-agreement", f"{final_quality(root).value} root {root!r} with {a.suffix_class.value} ending -{a.suffix}"))
    if a.suffix and a.conjugation != expected_conjugation(root):
        out.append(Violation("conjugation", f"{root!r} is {expected_conjugation(root).value}-conjugation, -{a.suffix} is {a.conjugation.value}"))
    if a.past and is_lenitable(root) and not a.lenited:
        out.append(Violation("past-lenition", f"past form of {root!r} not lenited"))
    if a.clipped_from:
        out.append(Violation("truncated-root", f"{root!r} clips the verb {a.clipped_from!r}"))
    whole, clipped = _english_root(root, eng)
    letters_from = len(root) if whole else 0
    bad = sorted({c for i, c in enumerate(a.reconstruct()) if c in NON_NATIVE_LETTERS and i >= letters_from})
    if bad:
        out.append(Violation("alphabet", "non-native letters " + ",".join(bad)))
    exempt: set[int] = set()
    if lex is not None:
        from .nounmorph import check_prefix

        for pa in check_prefix(root, lex):
            if pa.resolution != "lexicon":
                continue
            exempt.add(pa.seam)
            if pa.lenition_expected and not pa.lenition_present:
                out.append(Violation("prefix-lenition", f"{pa.root!r} should be lenited after {pa.prefix.form}-"))
    if not (whole or clipped):
        for v in check_vowel_harmony(root, exempt).violations:
            out.append(Violation("harmony", f"{v.left.value}|{v.cluster}|{v.right.value} at {v.start}"))
        for g in illegal_geminates(root):
            out.append(Violation("geminate", f"doubled consonant {g!r}"))
    return out


def validate_verb(
    word: str,
    analyses: list[VerbAnalysis] | None = None,
    lex: Lexicon | None = None,
    eng: Lexicon | None = None,
) -> RuleVerdict:
    """Conformant when any suffix reading breaks no rule.

    Readings rejected by :func:`parse_verb` for class disagreement are still
    judged here so that the disagreement is itemised.
    """
    cands = list(analyses or []) + [a for a in verb_candidates(word, lex) if a not in (analyses or [])]
    if not cands:
        raise NotAVerb(word)
    seen, items = set(), []
    for a in cands:
        fails = _failures(a, lex, eng)
        if not fails:
            return RuleVerdict((), reading=f"{a.slot} {a.root}+{a.suffix or '0'}")
        for v in fails:
            if v not in seen:
                seen.add(v)
                items.append(v)
    return RuleVerdict(tuple(items))

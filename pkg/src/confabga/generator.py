"""Synthetic confabulations, one recipe per taxonomy pattern.

Each recipe samples uniformly from eligible lexicon entries and rejects
candidates until one is out of vocabulary and gets the intended verdict.
``well_formed=False`` recipes inject one named rule violation instead.
"""
from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from typing import Callable, Iterable

from .classifier import Category
from .lexicon import POS, Lexicons, lookup
from .nounmorph import validate_noun
from .orthography import (
    NON_NATIVE_LETTERS,
    VowelClass,
    apply_lenition,
    check_alphabet,
    check_vowel_harmony,
    final_quality,
    illegal_geminates,
    initial_quality,
    is_lenitable,
    syllable_count,
    vowel_groups,
)
from .rules import RuleVerdict, affix_tables, verb_suffixes
from .verbmorph import NotAVerb, expected_conjugation, validate_verb, verb_candidates

MAX_ATTEMPTS = 1000
REPEAT_LIMIT = 20


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GenSpec:
    pattern: Category
    count: int
    rng_seed: int = 0
    well_formed: bool = True

    def __post_init__(self):
        if self.pattern is Category.UNCLASSIFIED:
            raise ValueError("cannot generate Unclassified words")
        if self.count < 1:
            raise ValueError("count must be at least 1")


@dataclass(frozen=True)
class Generated:
    word: str
    pattern: Category
    conformant: bool
    rule_violated: str | None = None
    # English word the recipe started from, if any
    source: str | None = None

    def to_dict(self) -> dict:
        return {
            "word": self.word,
            "pattern": self.pattern.value,
            "conformant": self.conformant,
            "rule_violated": self.rule_violated,
            "source": self.source,
        }


def _clean(form: str) -> bool:
    return form.isalpha() and not check_alphabet(form) and bool(vowel_groups(form))


class _Pools:
    """Eligible lexicon entries, computed once per generate() call."""

    def __init__(self, lexicons: Lexicons):
        ga, en = lexicons.irish, lexicons.english
        tables = affix_tables()
        prefix_forms = {p.form for p in tables.prefixes}
        self.nouns = [
            e.form for e in ga.all_entries()
            if e.pos is POS.NOUN and e.native and len(e.form) >= 3 and _clean(e.form)
            and e.form not in prefix_forms and not illegal_geminates(e.form)
            and check_vowel_harmony(e.form).passed
        ]
        self.lenitable_nouns = [n for n in self.nouns if is_lenitable(n)]
        self.mono_nouns = [n for n in self.nouns if syllable_count(n) == 1]
        self.poly_nouns = [n for n in self.nouns if syllable_count(n) > 1]
        self.english_nouns = [
            e.form for e in en.all_entries()
            if e.pos is POS.NOUN and e.form.isalpha() and len(e.form) >= 4 and not ga.has_pos(e.form, POS.NOUN)
        ]
        self.english_verbs = [
            e.form for e in en.all_entries()
            if e.pos is POS.VERB and e.form.isalpha() and 3 <= len(e.form) <= 8
            and not e.form.endswith(("ed", "ing", "s")) and e.form not in ga
        ]
        self.native_prefixes = [p for p in tables.prefixes if p.kind == "native"]
        self.learned_prefixes = [p for p in tables.prefixes if p.kind in ("learned", "adjectival")]
        self.plural_endings = [e for e in tables.endings if e.type == "plural"]
        self.derivational = [e for e in tables.endings if e.type == "derivational" and e.form not in ("aim", "im")]
        self.correspondences = tables.correspondences
        self.suffixes = [(s, initial_quality(s.form)) for s in verb_suffixes() if s.form]


def _require(pool: list, what: str) -> list:
    if not pool:
        raise GenerationError(f"lexicon has no {what}")
    return pool


# --------------------------------------------------------------------------
# English -> Irish respelling for the lazy-gaelicisation recipe

_RESPELL = [
    (r"tion$", "isean"), (r"ph", "f"), (r"th", "t"), (r"ck", "c"), (r"qu", "cv"), (r"sh", "s"),
    (r"k", "c"), (r"x", "cs"), (r"y", "í"), (r"w", "bh"), (r"v", "bh"), (r"j", "ds"), (r"z", "s"),
    (r"q", "c"),
]


def respell_english(word: str) -> str:
    """Map an English word into Irish letters; harmony is not yet repaired."""
    w = word.lower()
    if len(w) > 4 and w.endswith("e") and w[-2] not in "aeiou":
        w = w[:-1]
    for pat, rep in _RESPELL:
        w = re.sub(pat, rep, w)
    w = re.sub(r"([bcdfgmpst])\1+", r"\1", w)
    return w


def repair_harmony(word: str) -> str:
    """Insert glide vowels until every consonant cluster has matching flanks."""
    for _ in range(len(word)):
        report = check_vowel_harmony(word)
        if report.passed:
            return word
        v = report.violations[0]
        if v.left is VowelClass.BROAD:
            # broad ... slender: make the left side slender (a -> ai)
            word = word[: v.start] + "i" + word[v.start:]
        else:
            # slender ... broad: make the left side broad (e -> ea)
            word = word[: v.start] + "a" + word[v.start:]
    return word


# --------------------------------------------------------------------------
# recipes: each returns (word, source english word or None) or None to retry

Recipe = Callable[[random.Random, _Pools], "tuple[str, str | None] | None"]


def _compound(ok: bool):
    def make(rng, pools):
        first = rng.choice(_require(pools.nouns, "nouns for a compound head"))
        second = rng.choice(_require(pools.lenitable_nouns, "lenitable nouns for a compound second element"))
        return first + (apply_lenition(second) if ok else second), None
    return make


def _prefixed(ok: bool, learned: bool):
    def make(rng, pools):
        prefixes = pools.learned_prefixes if learned else pools.native_prefixes
        p = rng.choice(_require(prefixes, "learned prefixes" if learned else "native prefixes"))
        noun = rng.choice(_require(pools.lenitable_nouns, "lenitable nouns"))
        return p.form + (apply_lenition(noun) if ok else noun), None
    return make


def _suffixed(ok: bool):
    def make(rng, pools):
        if not ok:
            stem = rng.choice(_require(pools.poly_nouns, "polysyllabic nouns"))
            return stem + ("eanna" if final_quality(stem) is VowelClass.SLENDER else "anna"), None
        stem = rng.choice(_require(pools.nouns, "nouns"))
        ending = rng.choice(pools.plural_endings + pools.derivational)
        if ending.monosyllabic and syllable_count(stem) > 1:
            return None
        if initial_quality(ending.form) != final_quality(stem):
            return None
        return stem + ending.form, None
    return make


def _code_switch(ok: bool):
    def make(rng, pools):
        eng = rng.choice(_require(pools.english_nouns, "English nouns"))
        if ok:
            ending = rng.choice(pools.plural_endings + pools.derivational)
            return eng + ending.form, eng
        for tail, irish in pools.correspondences.items():
            if eng.endswith(tail) and len(tail) >= 3:
                lo, hi = max(4, int(len(eng) * 0.4 + 0.999)), len(eng) - len(tail)
                if lo > hi:
                    return None
                cut = rng.randint(lo, hi)
                wrong = [e.form for e in pools.derivational if e.form not in irish]
                return eng[:cut] + rng.choice(wrong), eng
        return None
    return make


def _lazy(ok: bool):
    def make(rng, pools):
        eng = rng.choice(_require(pools.english_nouns, "English nouns"))
        raw = respell_english(eng)
        if not vowel_groups(raw):
            return None
        return (repair_harmony(raw) if ok else raw), eng
    return make


def _verb(ok: bool, english: bool):
    def make(rng, pools):
        if english:
            root = rng.choice(_require(pools.english_verbs, "English verbs"))
            if root[-1] in "aeiouy":
                return None
        else:
            root = rng.choice(_require(pools.nouns, "nouns to conjugate"))
        if not vowel_groups(root):
            return None
        conj = expected_conjugation(root).value
        quality = final_quality(root)
        fitting = [
            s for s, q in pools.suffixes
            if (s.conjugation == conj) == ok and (q is quality) == ok and not s.slot.startswith("Past")
        ]
        if not fitting:
            return None
        return root + rng.choice(fitting).form, (root if english else None)
    return make


_RECIPES: dict[tuple[Category, bool], tuple[Recipe, str | None]] = {
    (Category.COMPOUND, True): (_compound(True), None),
    (Category.COMPOUND, False): (_compound(False), "compound-lenition"),
    (Category.PREFIX, True): (_prefixed(True, learned=False), None),
    (Category.PREFIX, False): (_prefixed(False, learned=False), "prefix-lenition"),
    (Category.GOOD_CONFABULATION, True): (_prefixed(True, learned=True), None),
    (Category.GOOD_CONFABULATION, False): (_prefixed(False, learned=True), "prefix-lenition"),
    (Category.SUFFIX, True): (_suffixed(True), None),
    (Category.SUFFIX, False): (_suffixed(False), "plural-anna-monosyllable"),
    (Category.CODE_SWITCHING, True): (_code_switch(True), None),
    (Category.CODE_SWITCHING, False): (_code_switch(False), "suffix-correspondence"),
    (Category.LAZY_GAELICISATION, True): (_lazy(True), None),
    (Category.LAZY_GAELICISATION, False): (_lazy(False), "harmony"),
    (Category.NOUN_CONJUGATION, True): (_verb(True, english=False), None),
    (Category.NOUN_CONJUGATION, False): (_verb(False, english=False), "class-agreement"),
    (Category.ENGLISH_CONJUGATED, True): (_verb(True, english=True), None),
    (Category.ENGLISH_CONJUGATED, False): (_verb(False, english=True), "class-agreement"),
}


def _verdict(word: str, pattern: Category, lexicons: Lexicons) -> RuleVerdict | None:
    ga, en = lexicons.irish, lexicons.english
    if pattern in (Category.NOUN_CONJUGATION, Category.ENGLISH_CONJUGATED):
        try:
            return validate_verb(word, None, ga, en)
        except NotAVerb:
            return None
    if verb_candidates(word, ga):
        # would be read as a verb out of context
        return None
    return validate_noun(word, ga, en)


def generate(spec: GenSpec, lexicons: Lexicons) -> list[Generated]:
    """Deterministic under ``spec.rng_seed``.

    Words are distinct while the recipe keeps finding new ones; once an
    accepted word has been redrawn ``REPEAT_LIMIT`` times the space is taken
    as exhausted and repeats are allowed.
    """
    recipe, rule = _RECIPES[(spec.pattern, spec.well_formed)]
    rng = random.Random(spec.rng_seed)
    pools = _Pools(lexicons)
    foreign_ok = spec.pattern in (Category.CODE_SWITCHING, Category.ENGLISH_CONJUGATED)
    verdicts: dict[str, bool] = {}

    def acceptable(word: str) -> bool:
        if word not in verdicts:
            ok = foreign_ok or not any(c in NON_NATIVE_LETTERS for c in word)
            ok = ok and not lookup(lexicons.irish, word).found
            verdict = _verdict(word, spec.pattern, lexicons) if ok else None
            verdicts[word] = (
                verdict is not None
                and verdict.conformant == spec.well_formed
                and (rule is None or rule in verdict.rule_ids)
            )
        return verdicts[word]

    out: list[Generated] = []
    seen: set[str] = set()
    for _ in range(spec.count):
        repeats = 0
        for _attempt in range(MAX_ATTEMPTS):
            got = recipe(rng, pools)
            if got is None or not acceptable(got[0]):
                continue
            word, source = got
            if word in seen:
                repeats += 1
                if repeats < REPEAT_LIMIT:
                    continue
            seen.add(word)
            out.append(Generated(word, spec.pattern, spec.well_formed, rule, source))
            break
        else:
            raise GenerationError(
                f"no acceptable {spec.pattern.value} word after {MAX_ATTEMPTS} attempts "
                f"(well_formed={spec.well_formed}); the lexicon is too small for this recipe"
            )
    return out


def to_jsonl(items: Iterable[Generated]) -> str:
    return "".join(json.dumps(g.to_dict(), ensure_ascii=False) + "\n" for g in items)

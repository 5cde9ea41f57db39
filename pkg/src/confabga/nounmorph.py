"""Noun analysis: plurals, compounds, prefixes, suffix chains, code-switched roots.

Every analyser returns *all* readings it can find; :func:`validate_noun`
then judges the word conformant when at least one reading breaks no rule.
Readings anchored on a known word (Irish lexicon or English wordlist)
take precedence: bare shape-based readings are only consulted when no
anchored reading exists.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .lexicon import POS, Lexicon, LexEntry, english_truncations, normalize_form
from .orthography import (
    MutationKind,
    NON_NATIVE_LETTERS,
    VOWELS,
    check_alphabet,
    check_vowel_harmony,
    detect_and_strip_mutation,
    illegal_geminates,
    is_lenitable,
    slenderize,
    syllable_count,
    vowel_groups,
)
from .rules import AffixTables, Ending, Prefix, RuleVerdict, Violation, affix_tables

CONTENT = (POS.NOUN, POS.VERB, POS.ADJECTIVE, POS.UNKNOWN)


class PluralStrategy(str, Enum):
    WEAK_SLENDERIZED = "WeakSlenderized"
    WEAK_A = "WeakA"
    STRONG = "Strong"


@dataclass(frozen=True)
class PluralAnalysis:
    root: str
    strategy: PluralStrategy
    suffix: str
    lemma: str | None = None
    monosyllabic_only: bool = False

    def reconstruct(self) -> str:
        if self.strategy is PluralStrategy.WEAK_SLENDERIZED:
            return slenderize(self.root) or self.root
        return self.root + self.suffix

    @property
    def root_well_formed(self) -> bool:
        return well_formed_stem(self.root)


@dataclass(frozen=True)
class CompoundSplit:
    first: LexEntry
    second: LexEntry
    second_surface: str
    second_lenited: bool
    plural: PluralAnalysis | None = None

    @property
    def lenition_required(self) -> bool:
        root = self.plural.root if self.plural else self.second.form
        return is_lenitable(self.second.form) or is_lenitable(root)

    def reconstruct(self) -> str:
        return self.first.form + self.second_surface


@dataclass(frozen=True)
class PrefixAnalysis:
    prefix: Prefix
    remainder: str
    root: str
    lenition_expected: bool
    lenition_present: bool
    hyphen: bool = False
    resolution: str | None = None  # lexicon | plural | suffix | verb | shape
    lemma: str | None = None
    plural: PluralAnalysis | None = None
    suffix: "SuffixAnalysis | None" = None

    @property
    def anchored(self) -> bool:
        return self.resolution in ("lexicon", "plural", "suffix")

    @property
    def seam(self) -> int:
        return len(self.prefix.form) + (1 if self.hyphen else 0)

    def reconstruct(self) -> str:
        return self.prefix.form + ("-" if self.hyphen else "") + self.remainder


@dataclass(frozen=True)
class SuffixAnalysis:
    stem: str
    lemma: str
    endings: tuple[tuple[Ending, str], ...]

    @property
    def surface_endings(self) -> list[str]:
        return [s for _, s in self.endings]

    def reconstruct(self) -> str:
        return self.stem + "".join(self.surface_endings)


@dataclass(frozen=True)
class CodeSwitchAnalysis:
    root: str
    english: str
    truncated: bool
    endings: tuple[tuple[Ending, str], ...]
    correspondence_ok: bool = True

    def reconstruct(self) -> str:
        return self.root + "".join(s for _, s in self.endings)


# --------------------------------------------------------------------------
# helpers


def well_formed_stem(stem: str) -> bool:
    """Native letters, a vowel, no foreign geminates, internal harmony."""
    if not vowel_groups(stem):
        return False
    if check_alphabet(stem) or illegal_geminates(stem):
        return False
    return check_vowel_harmony(stem).passed


def seam_harmony_ok(word: str, boundary: int) -> bool:
    """Harmony of the single consonant cluster spanning ``boundary``."""
    groups = vowel_groups(word)
    for (_, left_end), (right_start, _) in zip(groups, groups[1:]):
        if left_end <= boundary <= right_start:
            return all(
                not (v.start == left_end) for v in check_vowel_harmony(word).violations
            )
    return True


def _derived(lex: Lexicon) -> dict:
    # per-lexicon memo; the lexicon content itself never changes
    cache = lex.__dict__.setdefault("_morph_cache", {})
    return cache


def stem_index(lex: Lexicon, tables: AffixTables | None = None) -> dict[str, list[str]]:
    """Map stem variants (lemma, lemma minus a stem ending, slenderized) to lemmas."""
    tables = tables or affix_tables()
    cache = _derived(lex)
    key = ("stems", id(tables))
    if key in cache:
        return cache[key]
    index: dict[str, list[str]] = {}

    def add(stem: str, lemma: str) -> None:
        if len(stem) >= 2 and vowel_groups(stem):
            bucket = index.setdefault(stem, [])
            if lemma not in bucket:
                bucket.append(lemma)

    for e in lex.all_entries():
        if e.pos not in CONTENT or len(e.form) < 2:
            continue
        add(e.form, e.form)
        for end in tables.stem_endings:
            if e.form.endswith(end) and len(e.form) > len(end) + 1:
                add(e.form[: -len(end)], e.form)
        s = slenderize(e.form)
        if s:
            add(s, e.form)
    cache[key] = index
    return index


def _lemma_for_root(root: str, lex: Lexicon) -> str | None:
    if lex.has_pos(root, *CONTENT):
        return root
    for v in ("e", "a"):
        if lex.has_pos(root + v, *CONTENT):
            return root + v
    return None


def _unslenderize(word: str) -> list[str]:
    groups = vowel_groups(word)
    if not groups:
        return []
    start, end = groups[-1]
    if end == len(word) or word[end - 1] != "i" or end - start < 2:
        return []
    out = [word[: end - 1] + word[end:]]
    if word[end - 2] in "eé":
        out.append(word[: end - 1] + "a" + word[end:])
    return out


def _ending_surfaces(tables: AffixTables) -> list[tuple[Ending, str, bool]]:
    key = ("surfaces", id(tables))
    cached = _ENDING_CACHE.get(key)
    if cached is None:
        cached = []
        for e in tables.endings:
            cached.append((e, e.form, False))
            if e.form[-1] in VOWELS and len(e.form) > 1:
                cached.append((e, e.form[:-1], True))
        _ENDING_CACHE[key] = cached
    return cached


_ENDING_CACHE: dict = {}


def parse_endings(tail: str, tables: AffixTables, max_n: int = 3) -> list[tuple[tuple[Ending, str], ...]]:
    """Split ``tail`` into 1..max_n inventory endings.

    A vowel-final ending may lose that vowel before a vowel-initial ending
    (deartha + -ach -> dearthach).
    """
    if not tail:
        return [()]
    if max_n == 0:
        return []
    key = (id(tables), tail, max_n)
    hit = _ENDING_CACHE.get(key)
    if hit is not None:
        return hit
    out = []
    for e, surf, elided in _ending_surfaces(tables):
        if not tail.startswith(surf):
            continue
        rest = tail[len(surf):]
        if elided and not (rest and rest[0] in VOWELS):
            continue
        for more in parse_endings(rest, tables, max_n - 1):
            out.append(((e, surf),) + more)
    if len(_ENDING_CACHE) > 200_000:
        _ENDING_CACHE.clear()
    _ENDING_CACHE[key] = out
    return out


# --------------------------------------------------------------------------
# analysers


def analyze_plural(word: str, lex: Lexicon, tables: AffixTables | None = None) -> list[PluralAnalysis]:
    tables = tables or affix_tables()
    w = normalize_form(word)
    out: list[PluralAnalysis] = []
    for e in tables.endings_of_type("plural", "weak_a"):
        if not w.endswith(e.form) or len(w) < len(e.form) + 2:
            continue
        root = w[: -len(e.form)]
        if not vowel_groups(root) or not seam_harmony_ok(w, len(root)):
            continue
        strategy = PluralStrategy.WEAK_A if e.type == "weak_a" else PluralStrategy.STRONG
        out.append(PluralAnalysis(root, strategy, e.form, _lemma_for_root(root, lex), e.monosyllabic))
    for cand in _unslenderize(w):
        if slenderize(cand) == w:
            lemma = cand if lex.has_pos(cand, *CONTENT) else None
            out.append(PluralAnalysis(cand, PluralStrategy.WEAK_SLENDERIZED, "", lemma))
    return out


def _prefix_forms(tables: AffixTables) -> set[str]:
    return {p.form for p in tables.prefixes}


def split_compound(word: str, lex: Lexicon, tables: AffixTables | None = None) -> list[CompoundSplit]:
    tables = tables or affix_tables()
    w = normalize_form(word)
    if len(w) < 4:
        return []
    prefixes = _prefix_forms(tables)
    out = []
    for i in range(2, len(w) - 1):
        head = w[:i]
        if head in prefixes or not lex.has_pos(head, POS.NOUN):
            continue
        first = next(e for e in lex.entries(head) if e.pos is POS.NOUN)
        surface = w[i:]
        # a vowel-initial tail reads as a suffix, not a second noun
        if surface[0] in VOWELS:
            continue
        for kind, r in detect_and_strip_mutation(surface):
            if kind not in (MutationKind.NONE, MutationKind.LENITION):
                continue
            lenited = kind is MutationKind.LENITION
            if lex.has_pos(r, POS.NOUN):
                second = next(e for e in lex.entries(r) if e.pos is POS.NOUN)
                out.append(CompoundSplit(first, second, surface, lenited))
                continue
            for pa in analyze_plural(r, lex, tables):
                if pa.lemma and lex.has_pos(pa.lemma, POS.NOUN):
                    second = next(e for e in lex.entries(pa.lemma) if e.pos is POS.NOUN)
                    out.append(CompoundSplit(first, second, surface, lenited, pa))
    return out


def analyze_suffixes(word: str, lex: Lexicon, tables: AffixTables | None = None) -> list[SuffixAnalysis]:
    """Known stem followed by a chain of inventory endings."""
    tables = tables or affix_tables()
    w = normalize_form(word)
    index = stem_index(lex, tables)
    out = []
    for i in range(2, len(w)):
        lemmas = index.get(w[:i])
        if not lemmas:
            continue
        for chain in parse_endings(w[i:], tables):
            if not chain:
                continue
            for lemma in lemmas:
                out.append(SuffixAnalysis(w[:i], lemma, chain))
    return out


def check_prefix(word: str, lex: Lexicon, tables: AffixTables | None = None) -> list[PrefixAnalysis]:
    tables = tables or affix_tables()
    w = normalize_form(word)
    out = []
    for p in tables.prefixes:
        if not w.startswith(p.form):
            continue
        rest = w[len(p.form):]
        hyphen = rest.startswith("-")
        if hyphen:
            rest = rest[1:]
        if len(rest) < 2 or not vowel_groups(rest):
            continue
        present = False
        root = rest
        for kind, r in detect_and_strip_mutation(rest):
            if kind is MutationKind.LENITION and is_lenitable(r):
                present, root = True, r
        expected = p.lenites and is_lenitable(root)
        out.append(_resolve_prefix(p, rest, root, expected, present, hyphen, lex, tables))
    return out


def _resolve_prefix(p, rest, root, expected, present, hyphen, lex, tables) -> PrefixAnalysis:
    base = dict(prefix=p, remainder=rest, root=root, lenition_expected=expected,
                lenition_present=present, hyphen=hyphen)
    if lex.has_pos(root, *CONTENT):
        return PrefixAnalysis(**base, resolution="lexicon", lemma=root)
    plurals = analyze_plural(root, lex, tables)
    for pa in plurals:
        if pa.lemma:
            return PrefixAnalysis(**base, resolution="plural", lemma=pa.lemma, plural=pa)
    for sa in analyze_suffixes(root, lex, tables):
        if not _suffix_failures(sa, lex):
            return PrefixAnalysis(**base, resolution="suffix", lemma=sa.lemma, suffix=sa)
    from .verbmorph import parse_verb  # circular at import time

    if parse_verb(root, lex):
        return PrefixAnalysis(**base, resolution="verb")
    for pa in plurals:
        if pa.root_well_formed:
            return PrefixAnalysis(**base, resolution="shape", plural=pa)
    if well_formed_stem(root):
        return PrefixAnalysis(**base, resolution="shape")
    return PrefixAnalysis(**base)


def analyze_code_switch(
    word: str, eng: Lexicon, lex: Lexicon, tables: AffixTables | None = None, min_root: int = 3
) -> list[CodeSwitchAnalysis]:
    """English root (whole or clipped) + Irish endings; the root is not an Irish noun."""
    tables = tables or affix_tables()
    w = normalize_form(word)
    out = []
    for i in range(min_root, len(w)):
        root = w[:i]
        whole = root in eng
        clipped = [] if whole else english_truncations(eng, root, ratio=0.4)
        if not (whole or clipped) or lex.has_pos(root, POS.NOUN):
            continue
        chains = [c for c in parse_endings(w[i:], tables, max_n=2) if c]
        if not chains:
            continue
        if whole:
            for chain in chains:
                out.append(CodeSwitchAnalysis(root, root, False, chain))
            continue
        for chain in chains:
            first = chain[0][0].form
            ok = any(
                first in irish
                for full in clipped
                for en_tail, irish in tables.correspondences.items()
                if full[len(root):].endswith(en_tail)
            )
            out.append(CodeSwitchAnalysis(root, clipped[0], True, chain, ok))
    return out


# --------------------------------------------------------------------------
# validation


@dataclass
class _Reading:
    name: str
    anchored: bool
    failures: list[Violation] = field(default_factory=list)
    exempt_boundaries: set[int] = field(default_factory=set)
    foreign_letters_end: int = 0
    foreign_shape_end: int = 0


def _plural_failures(pa: PluralAnalysis) -> list[Violation]:
    out = []
    stem = pa.lemma or pa.root
    if pa.monosyllabic_only and vowel_groups(stem) and syllable_count(stem) > 1:
        out.append(Violation("plural-anna-monosyllable", f"-{pa.suffix} on polysyllabic {stem}"))
    if pa.lemma is None and not pa.root_well_formed:
        out.append(Violation("ill-formed-root", f"root {pa.root!r}"))
    return out


def _suffix_failures(sa: SuffixAnalysis, lex: Lexicon) -> list[Violation]:
    out = []
    seen_inflection = sa.stem.endswith(("adh", "eadh")) and sa.stem == sa.lemma
    stem = sa.stem
    for ending, surf in sa.endings:
        if ending.type == "derivational" and seen_inflection:
            out.append(Violation("derivation-after-inflection", f"-{ending.form} after an inflected form"))
        if ending.inflectional:
            seen_inflection = True
        if ending.monosyllabic and syllable_count(stem) > 1:
            out.append(Violation("plural-anna-monosyllable", f"-{ending.form} on polysyllabic {stem}"))
        stem += surf
    return out


def _readings_for(base: str, lex: Lexicon, eng: Lexicon | None, tables: AffixTables) -> list[_Reading]:
    readings: list[_Reading] = []
    for cs in split_compound(base, lex, tables):
        r = _Reading(f"compound {cs.first.form}+{cs.second_surface}", True)
        if cs.lenition_required and not cs.second_lenited:
            r.failures.append(Violation("compound-lenition", f"second element {cs.second_surface!r} not lenited"))
        if cs.plural:
            r.failures += _plural_failures(cs.plural)
        readings.append(r)
    for pa in check_prefix(base, lex, tables):
        r = _Reading(f"prefix {pa.prefix.form}-+{pa.remainder}", pa.anchored, exempt_boundaries={pa.seam})
        if pa.lenition_expected and not pa.lenition_present:
            r.failures.append(Violation("prefix-lenition", f"{pa.root!r} should be lenited after {pa.prefix.form}-"))
        if pa.prefix.kind == "source":
            r.failures.append(Violation("source-prefix", f"{pa.prefix.form}- kept in its source form"))
        if pa.resolution is None:
            r.failures.append(Violation("unresolved-remainder", f"{pa.root!r} is not a well-formed stem"))
        if pa.plural is not None:
            r.failures += _plural_failures(pa.plural)
        readings.append(r)
    for pl in analyze_plural(base, lex, tables):
        r = _Reading(f"plural {pl.strategy.value} {pl.root}+{pl.suffix}", pl.lemma is not None)
        r.failures += _plural_failures(pl)
        readings.append(r)
    for sa in analyze_suffixes(base, lex, tables):
        r = _Reading(f"suffix {sa.lemma}: {sa.stem}+" + "+".join(sa.surface_endings), True)
        r.failures += _suffix_failures(sa, lex)
        readings.append(r)
    if eng is not None:
        for cw in analyze_code_switch(base, eng, lex, tables):
            r = _Reading(f"code-switch {cw.english}: {cw.root}+" + "+".join(s for _, s in cw.endings), True)
            r.foreign_shape_end = len(cw.root)
            if not cw.truncated:
                r.foreign_letters_end = len(cw.root)
            if not cw.correspondence_ok:
                r.failures.append(Violation("suffix-correspondence", f"-{cw.endings[0][0].form} does not render the English ending of {cw.english!r}"))
            readings.append(r)
    readings.append(_Reading("simplex", False))
    return readings


def _global_failures(base: str, r: _Reading, tables: AffixTables) -> list[Violation]:
    out = []
    bad = sorted({c for i, c in enumerate(base) if c in NON_NATIVE_LETTERS and i >= r.foreign_letters_end})
    if bad:
        out.append(Violation("alphabet", "non-native letters " + ",".join(bad)))
    for v in check_vowel_harmony(base, r.exempt_boundaries).violations:
        if v.end < r.foreign_shape_end:
            continue
        out.append(Violation("harmony", f"{v.left.value}|{v.cluster}|{v.right.value} at {v.start}"))
    tail = base[r.foreign_shape_end:] if r.foreign_shape_end else base
    for g in illegal_geminates(tail):
        out.append(Violation("geminate", f"doubled consonant {g!r}"))
    for form, expected in tables.misspelt_prefixes:
        if base.startswith(form):
            out.append(Violation("misspelt-prefix", f"{form}- should be {expected}-"))
    return out


def validate_noun(word: str, lex: Lexicon, eng: Lexicon | None = None, tables: AffixTables | None = None) -> RuleVerdict:
    tables = tables or affix_tables()
    w = normalize_form(word)
    if not vowel_groups(w):
        return RuleVerdict((Violation("no-vowel", f"{word!r} has no vowel"),))
    scored: list[tuple[_Reading, list[Violation]]] = []
    for _, base in detect_and_strip_mutation(w):
        if not vowel_groups(base):
            continue
        for r in _readings_for(base, lex, eng, tables):
            scored.append((r, r.failures + _global_failures(base, r, tables)))
    if any(r.anchored for r, _ in scored):
        scored = [(r, f) for r, f in scored if r.anchored]
    for r, fails in scored:
        if not fails:
            return RuleVerdict((), reading=r.name)
    seen, out = set(), []
    for _, fails in scored:
        for v in fails:
            if v not in seen:
                seen.add(v)
                out.append(v)
    return RuleVerdict(tuple(out))

"""Taxonomy assignment for out-of-vocabulary tokens.

Each OOV token gets one category (two verb patterns, six noun patterns or
Unclassified) and a rule verdict.  The category is a deterministic decision
tree; the verdict comes only from the morphology validators, so tuning the
similarity threshold can move a word between categories but never flips
its verdict.
"""
from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

from .lexicon import POS, Lexicon, Lexicons, english_root_match, lookup, normalize_form
from .nounmorph import (
    CONTENT,
    analyze_code_switch,
    analyze_plural,
    analyze_suffixes,
    check_prefix,
    split_compound,
    validate_noun,
)
from .orthography import MutationKind, check_alphabet, detect_and_strip_mutation, nfc, vowel_groups
from .rules import RuleVerdict, Violation, affix_tables
from .verbmorph import NotAVerb, validate_verb, verb_candidates


class Category(str, Enum):
    NOUN_CONJUGATION = "NounConjugation"
    ENGLISH_CONJUGATED = "EnglishConjugated"
    COMPOUND = "Compound"
    LAZY_GAELICISATION = "LazyGaelicisation"
    GOOD_CONFABULATION = "GoodConfabulation"
    CODE_SWITCHING = "CodeSwitching"
    PREFIX = "Prefix"
    SUFFIX = "Suffix"
    UNCLASSIFIED = "Unclassified"

    @property
    def pos(self) -> str | None:
        if self in VERB_CATEGORIES:
            return "Verb"
        if self in NOUN_CATEGORIES:
            return "Noun"
        return None


VERB_CATEGORIES = frozenset({Category.NOUN_CONJUGATION, Category.ENGLISH_CONJUGATED})
NOUN_CATEGORIES = frozenset({
    Category.COMPOUND, Category.LAZY_GAELICISATION, Category.GOOD_CONFABULATION,
    Category.CODE_SWITCHING, Category.PREFIX, Category.SUFFIX,
})
DEFAULT_NOUN_ORDER = (
    Category.COMPOUND,
    Category.CODE_SWITCHING,
    Category.PREFIX,
    Category.SUFFIX,
    Category.GOOD_CONFABULATION,
    Category.LAZY_GAELICISATION,
)

# a word right after one of these is read as a noun even if it ends like a verb
NOUN_CONTEXT = frozenset(
    "an na sa san den don de do le leis ag ar i in ó faoi trí thrí dhá dá aon "
    "ceithre cúig sé seacht ocht naoi deich céad chéad milliún mhilliún míle "
    "gach cúpla roinnt".split()
)


class NotOOV(ValueError):
    """classify_token was handed a word the Irish lexicon already knows."""


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class AnalyzedToken:
    surface: str
    sentence_id: int = 0
    position: int = 0
    # previous target-side token, used to tell nouns after articles and
    # numerals apart from verb forms
    prev: str | None = None


@dataclass(frozen=True)
class HallucinationRecord:
    surface: str
    sentence_id: int
    category: Category
    verdict: RuleVerdict
    pos: str | None = None
    position: int = 0
    evidence: tuple[str, ...] = ()
    source_link: tuple[str, float] | None = None

    @property
    def conformant(self) -> bool:
        return self.verdict.conformant

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "sentence_id": self.sentence_id,
            "position": self.position,
            "pos": self.pos,
            "category": self.category.value,
            "conformant": self.verdict.conformant,
            "violations": [{"rule_id": v.rule_id, "detail": v.detail} for v in self.verdict.violations],
            "evidence": list(self.evidence),
            "source_link": None if self.source_link is None
            else {"english": self.source_link[0], "similarity": self.source_link[1]},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HallucinationRecord":
        link = d.get("source_link")
        return cls(
            surface=d["surface"],
            sentence_id=int(d.get("sentence_id", 0)),
            category=Category(d["category"]),
            verdict=RuleVerdict(tuple(Violation(v["rule_id"], v["detail"]) for v in d.get("violations", []))),
            pos=d.get("pos"),
            position=int(d.get("position", 0)),
            evidence=tuple(d.get("evidence", ())),
            source_link=(link["english"], float(link["similarity"])) if link else None,
        )


@dataclass(frozen=True)
class ClassifierConfig:
    threshold: float = 0.6
    min_root_len: int = 3
    category_order: tuple[Category, ...] = DEFAULT_NOUN_ORDER

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.min_root_len < 1:
            raise ConfigError("min_root_len must be positive")
        bad = [c for c in self.category_order if c not in NOUN_CATEGORIES]
        if bad or len(set(self.category_order)) != len(self.category_order):
            raise ConfigError(f"category_order must list distinct noun categories, got {self.category_order}")


def parse_config(text: str, base: ClassifierConfig | None = None) -> ClassifierConfig:
    """Read ``key = value`` lines; ``#`` starts a comment.

    Keys: threshold, min_root_len, category_order (comma separated names).
    """
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            if key == "threshold":
                values[key] = float(value)
            elif key == "min_root_len":
                values[key] = int(value)
            elif key == "category_order":
                values[key] = tuple(Category(v.strip()) for v in value.split(",") if v.strip())
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from exc
    return replace(base or ClassifierConfig(), **values)


def load_config(path: str | Path) -> ClassifierConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


# --------------------------------------------------------------------------
# phonetic similarity

_FADA = str.maketrans("áéíóú", "aeiou")
_IRISH_DIGRAPHS = [
    ("bhf", "v"), ("bh", "v"), ("mh", "v"), ("ch", "k"), ("dh", "g"), ("gh", "g"),
    ("th", "h"), ("fh", ""), ("ph", "f"), ("sh", "h"),
]
_IRISH_NUCLEI = {"ao": "i", "aoi": "i", "ea": "a", "eo": "o", "ui": "i", "iu": "u", "io": "i", "ae": "e", "ei": "e"}
_SLENDER = set("eéií")


def _irish_vowel(group: str) -> str:
    for c in group:
        if c in "áéíóú":
            return c.translate(_FADA)
    return _IRISH_NUCLEI.get(group, group[0])


@lru_cache(maxsize=65536)
def irish_skeleton(word: str) -> str:
    w = re.sub(r"[^a-záéíóú]", "", nfc(word).lower())
    out = []
    i = 0
    while i < len(w):
        for src, dst in _IRISH_DIGRAPHS:
            if w.startswith(src, i):
                out.append(dst)
                i += len(src)
                break
        else:
            c = w[i]
            if c in "aeiouáéíóú":
                j = i
                while j < len(w) and w[j] in "aeiouáéíóú":
                    j += 1
                out.append(_irish_vowel(w[i:j]))
                i = j
                continue
            if c == "s":
                nxt = re.search(r"[aeiouáéíóú]", w[i:])
                slender = nxt.group() in _SLENDER if nxt else (i > 0 and w[i - 1] in _SLENDER)
                out.append("S" if slender else "s")
            else:
                out.append({"c": "k", "w": "v", "y": "i", "q": "k", "x": "ks", "z": "s"}.get(c, c))
            i += 1
    return _collapse("".join(out))


_ENGLISH_RULES = [
    (r"tion|sion", "Sn"), (r"ph", "f"), (r"sh", "S"), (r"ch", "k"), (r"ck", "k"), (r"qu", "kv"),
    (r"th", "h"), (r"gh", ""), (r"c(?=[eiy])", "s"), (r"c", "k"), (r"x", "ks"), (r"y", "i"), (r"w", "v"),
]


@lru_cache(maxsize=65536)
def english_skeleton(word: str) -> str:
    w = re.sub(r"[^a-z]", "", word.lower())
    if len(w) > 3 and w.endswith("e") and w[-2] not in "aeiou":
        w = w[:-1]
    for pat, rep in _ENGLISH_RULES:
        w = re.sub(pat, rep, w)
    # vowel digraphs reduce to their first letter
    w = re.sub(r"([aeiou])[aeiou]+", r"\1", w)
    return _collapse(w)


def _collapse(s: str) -> str:
    return re.sub(r"(.)\1+", r"\1", s)


_NEAR = frozenset(
    (a, b) for g in ("td", "kg", "pb", "fv", "sS", "aeiou") for a in g for b in g if a != b
)


def skeleton_distance(a: str, b: str) -> float:
    prev = [float(j) for j in range(len(b) + 1)]
    for i, ca in enumerate(a, 1):
        cur = [float(i)]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (0.0 if ca == cb else 0.5 if (ca, cb) in _NEAR else 1.0)))
        prev = cur
    return prev[-1]


@lru_cache(maxsize=65536)
def skeleton_similarity(a: str, b: str) -> float:
    if not a and not b:
        return 1.0
    return 1.0 - skeleton_distance(a, b) / max(len(a), len(b))


_ENGLISH_TAILS = ("ics", "ic", "es", "s")


@lru_cache(maxsize=16384)
def _english_variants(word: str) -> frozenset[str]:
    w = word.lower()
    out = {english_skeleton(w)}
    for t in _ENGLISH_TAILS:
        if w.endswith(t) and len(w) - len(t) >= 3:
            out.add(english_skeleton(w[: -len(t)]))
    return frozenset(out)


@lru_cache(maxsize=16384)
def _irish_variants(word: str) -> frozenset[str]:
    w = normalize_form(word)
    bases = {b for k, b in detect_and_strip_mutation(w) if vowel_groups(b)} or {w}
    endings = {e.form for e in affix_tables().endings}
    out = set()
    for b in bases:
        out.add(irish_skeleton(b))
        for e in endings:
            if b.endswith(e) and len(b) - len(e) >= 3:
                out.add(irish_skeleton(b[: -len(e)]))
    return frozenset(out)


def phonetic_similarity(english: str, irish: str) -> float:
    """Best skeleton similarity over inflection-stripped variants, in [0, 1]."""
    if not english or not irish:
        raise ValueError("phonetic_similarity needs two non-empty words")
    if normalize_form(english) == normalize_form(irish):
        return 1.0
    best = 0.0
    for e in _english_variants(english):
        for g in _irish_variants(irish):
            best = max(best, skeleton_similarity(e, g))
    return round(best, 4)


def calibrate_threshold(positives: list[float], negatives: list[float], step: float = 0.01) -> tuple[float, float, int]:
    """Sweep thresholds; return (threshold, margin, errors) with fewest errors, then widest margin.

    A score counts as positive when it is ``>=`` the threshold.  The margin is
    the distance from the threshold to the nearest score on either side.
    """
    scores = positives + negatives
    best = None
    n = int(round(1 / step))
    for k in range(n + 1):
        t = round(k * step, 6)
        errors = sum(s < t for s in positives) + sum(s >= t for s in negatives)
        margin = min((abs(s - t) for s in scores), default=0.0)
        key = (errors, -margin, t)
        if best is None or key < best[0]:
            best = (key, t, margin, errors)
    _, t, margin, errors = best
    return t, round(margin, 4), errors


# --------------------------------------------------------------------------
# classification

_SOURCE_WORD = re.compile(r"[A-Za-z]+(?:'[A-Za-z]+)?")


def content_words(source: str | list[str], eng: Lexicon) -> list[str]:
    """Source-side words that are not function words, lowercased, first occurrence order."""
    words = _SOURCE_WORD.findall(source) if isinstance(source, str) else list(source)
    out = []
    for w in words:
        w = w.lower()
        if len(w) < 3 or eng.has_pos(w, POS.OTHER) or w in out:
            continue
        out.append(w)
    return out


def best_source_link(word: str, candidates: list[str]) -> tuple[str, float] | None:
    best = None
    for c in candidates:
        s = phonetic_similarity(c, word)
        if best is None or s > best[1]:
            best = (c, s)
    return best


def _bases(word: str) -> list[tuple[MutationKind, str]]:
    return [(k, b) for k, b in detect_and_strip_mutation(word) if vowel_groups(b)]


def _is_verb_shaped(w: str, token: AnalyzedToken, lex: Lexicon) -> bool:
    if token.prev is not None and normalize_form(token.prev) in NOUN_CONTEXT:
        return False
    return bool(verb_candidates(w, lex))


def _verb_category(w: str, lexicons: Lexicons, config: ClassifierConfig) -> tuple[Category, list[str]]:
    ga, en = lexicons.irish, lexicons.english
    cands = verb_candidates(w, ga)
    roots = []
    for a in cands:
        if a.root not in roots:
            roots.append(a.root)
    for root in roots:
        for r in (root, root[:-3] if root.endswith("áil") else None, root[:-2] if root.endswith("ál") else None):
            if r and ga.has_pos(r, POS.NOUN):
                return Category.NOUN_CONJUGATION, [f"noun root {r}"]
        for pa in check_prefix(root, ga):
            if pa.prefix.native and ga.has_pos(pa.root, POS.NOUN):
                return Category.NOUN_CONJUGATION, [f"noun root {pa.root} after {pa.prefix.form}-"]
    for root in roots:
        if ga.has_pos(root, *CONTENT):
            continue
        eng = english_root_match(en, root, min_len=config.min_root_len, truncated=True)
        if eng:
            return Category.ENGLISH_CONJUGATED, [f"english root {eng}"]
    return Category.UNCLASSIFIED, ["verb-shaped, no recognised root"]


def _match_compound(bases, lexicons, config, sources, verdict):
    for _, b in bases:
        for cs in split_compound(b, lexicons.irish):
            return [f"compound {cs.first.form}+{cs.second_surface}"]
    return None


def _match_code_switch(bases, lexicons, config, sources, verdict):
    ga, en = lexicons.irish, lexicons.english
    for _, b in bases:
        found = analyze_code_switch(b, en, ga, min_root=config.min_root_len)
        if found:
            # whole English words beat clippings, then the longest root wins
            cw = max(found, key=lambda c: (not c.truncated, len(c.root), -len(c.endings)))
            return [f"english root {cw.english} as {cw.root}-", "endings -" + "-".join(s for _, s in cw.endings)]
    return None


def _match_prefix(bases, lexicons, config, sources, verdict):
    for _, b in bases:
        for pa in check_prefix(b, lexicons.irish):
            if pa.prefix.kind == "native" and pa.resolution is not None:
                return [f"prefix {pa.prefix.form}- + {pa.remainder} ({pa.resolution})"]
    return None


def _match_suffix(bases, lexicons, config, sources, verdict):
    ga = lexicons.irish
    for _, b in bases:
        for pl in analyze_plural(b, ga):
            if pl.lemma and ga.has_pos(pl.lemma, POS.NOUN):
                return [f"plural of {pl.lemma} ({pl.strategy.value})"]
        for sa in analyze_suffixes(b, ga):
            if ga.has_pos(sa.lemma, POS.NOUN):
                return [f"suffix chain on {sa.lemma}: " + "+".join(sa.surface_endings)]
    return None


def _match_good(bases, lexicons, config, sources, verdict):
    if not verdict.conformant:
        return None
    ga, en = lexicons.irish, lexicons.english
    for _, b in bases:
        if check_alphabet(b):
            continue
        for pa in check_prefix(b, ga):
            if pa.prefix.kind in ("learned", "adjectival") and pa.anchored:
                if english_root_match(en, b, min_len=max(config.min_root_len, 4)):
                    continue
                return [f"native parts {pa.prefix.form}- + {pa.lemma}"]
    return None


def _match_lazy(bases, lexicons, config, sources, verdict):
    if not sources or check_alphabet(bases[0][1]):
        return None
    link = best_source_link(bases[0][1], sources)
    if link and link[1] >= config.threshold:
        return [f"sounds like {link[0]} ({link[1]:.2f})"]
    return None


_MATCHERS = {
    Category.COMPOUND: _match_compound,
    Category.CODE_SWITCHING: _match_code_switch,
    Category.PREFIX: _match_prefix,
    Category.SUFFIX: _match_suffix,
    Category.GOOD_CONFABULATION: _match_good,
    Category.LAZY_GAELICISATION: _match_lazy,
}


def classify_token(
    token: AnalyzedToken,
    source_sentence: str | list[str],
    lexicons: Lexicons,
    config: ClassifierConfig | None = None,
) -> HallucinationRecord:
    """Assign a category and a verdict to an OOV token.

    Verb-shaped tokens (a suffix split exists and the previous word is not an
    article, numeral or preposition) go down the verb branch.  Everything
    else is tried against the noun patterns in ``config.category_order``.
    """
    config = config or ClassifierConfig()
    ga, en = lexicons.irish, lexicons.english
    w = normalize_form(token.surface)
    if not w:
        raise ValueError("empty token")
    if lookup(ga, w).found:
        raise NotOOV(token.surface)
    sources = content_words(source_sentence, en)
    link = best_source_link(w, sources) if sources else None
    base = dict(surface=token.surface, sentence_id=token.sentence_id, position=token.position)

    if _is_verb_shaped(w, token, ga):
        try:
            verdict = validate_verb(w, None, ga, en)
        except NotAVerb:  # pragma: no cover - guarded by _is_verb_shaped
            verdict = None
        if verdict is not None:
            cat, why = _verb_category(w, lexicons, config)
            return HallucinationRecord(
                **base, category=cat, verdict=verdict, pos="Verb",
                evidence=tuple(why + _verdict_evidence(verdict)), source_link=link,
            )

    verdict = validate_noun(w, ga, en)
    bases = _bases(w) or [(MutationKind.NONE, w)]
    for cat in config.category_order:
        why = _MATCHERS[cat](bases, lexicons, config, sources, verdict)
        if why is None:
            continue
        if cat is Category.CODE_SWITCHING and link is None:
            root = why[0].split()[2]
            link = (root, phonetic_similarity(root, w))
        return HallucinationRecord(
            **base, category=cat, verdict=verdict, pos="Noun",
            evidence=tuple(why + _verdict_evidence(verdict)), source_link=link,
        )
    return HallucinationRecord(
        **base, category=Category.UNCLASSIFIED, verdict=verdict, pos="Noun",
        evidence=tuple(["no pattern matched"] + _verdict_evidence(verdict)), source_link=link,
    )


def _verdict_evidence(verdict: RuleVerdict) -> list[str]:
    if verdict.conformant:
        return [f"conformant via {verdict.reading}"] if verdict.reading else ["conformant"]
    return [f"{v.rule_id}: {v.detail}" for v in verdict.violations]

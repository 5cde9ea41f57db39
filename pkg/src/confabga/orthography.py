"""Irish orthographic primitives.

Vowel quality (broad/slender), consonant-cluster harmony, initial
mutations and a few spelling-shape checks.  All functions are pure and
operate on NFC text.
"""
from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from enum import Enum


class VowelClass(str, Enum):
    BROAD = "Broad"
    SLENDER = "Slender"


class MutationKind(str, Enum):
    NONE = "None"
    LENITION = "Lenition"
    ECLIPSIS = "Eclipsis"
    T_PREFIX = "TPrefix"
    H_PREFIX = "HPrefix"


class UnanalyzableToken(ValueError):
    """Raised when a token has no vowel and cannot be analysed."""


BROAD_VOWELS = frozenset("aáoóuú")
SLENDER_VOWELS = frozenset("eéií")
VOWELS = BROAD_VOWELS | SLENDER_VOWELS
NATIVE_CONSONANTS = frozenset("bcdfghlmnprst")
NON_NATIVE_LETTERS = frozenset("jkqvwxyz")

LENITABLE = frozenset("bcdfgmpt")
# only these doubled consonants are native spellings
NATIVE_GEMINATES = frozenset({"ll", "nn", "rr"})

_V = "aeiouáéíóú"


def nfc(text: str) -> str:
    if unicodedata.is_normalized("NFC", text):
        return text
    return unicodedata.normalize("NFC", text)


def classify_vowel(c: str) -> VowelClass | None:
    """Return the vowel class of a single character, or None for non-vowels."""
    c = nfc(c).lower()
    if c in BROAD_VOWELS:
        return VowelClass.BROAD
    if c in SLENDER_VOWELS:
        return VowelClass.SLENDER
    return None


def is_vowel(c: str) -> bool:
    return c.lower() in VOWELS


def check_alphabet(word: str) -> set[str]:
    return {c for c in nfc(word).lower() if c in NON_NATIVE_LETTERS}


_VOWEL_RUN = re.compile(f"[{_V}]+")


def vowel_groups(word: str) -> list[tuple[int, int]]:
    """Spans of maximal runs of vowel letters."""
    return [m.span() for m in _VOWEL_RUN.finditer(nfc(word).lower())]


def _require_vowel(word: str) -> list[tuple[int, int]]:
    groups = vowel_groups(word)
    if not groups:
        raise UnanalyzableToken(f"no vowel in {word!r}")
    return groups


@dataclass(frozen=True)
class HarmonyViolation:
    start: int
    end: int
    left: VowelClass
    right: VowelClass
    cluster: str


@dataclass(frozen=True)
class HarmonyReport:
    violations: tuple[HarmonyViolation, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.violations


def check_vowel_harmony(word: str, exempt: frozenset[int] | set[int] = frozenset()) -> HarmonyReport:
    """Check every internal consonant cluster for matching flank classes.

    ``exempt`` holds character offsets of morpheme boundaries (e.g. after a
    prefix); a cluster containing such an offset is not checked.  Clusters
    containing a hyphen or apostrophe are always exempt.
    """
    w = nfc(word).lower()
    groups = _require_vowel(w)
    out = []
    for (_, left_end), (right_start, _) in zip(groups, groups[1:]):
        cluster = w[left_end:right_start]
        if "-" in cluster or "'" in cluster:
            continue
        if any(left_end <= b <= right_start for b in exempt):
            continue
        left = classify_vowel(w[left_end - 1])
        right = classify_vowel(w[right_start])
        if left != right:
            out.append(HarmonyViolation(left_end, right_start, left, right, cluster))
    return HarmonyReport(tuple(out))


def syllable_count(word: str) -> int:
    return len(_require_vowel(word))


def final_quality(stem: str) -> VowelClass:
    groups = _require_vowel(stem)
    return classify_vowel(nfc(stem)[groups[-1][1] - 1])


def initial_quality(text: str) -> VowelClass:
    groups = _require_vowel(text)
    return classify_vowel(nfc(text)[groups[0][0]])


def is_lenitable(root: str) -> bool:
    r = nfc(root).lower()
    if not r:
        return False
    if r[0] in LENITABLE:
        # already lenited forms are left alone
        return len(r) == 1 or r[1] != "h"
    if r[0] == "s" and len(r) > 1:
        return r[1] in VOWELS or r[1] in "lnr"
    return False


def apply_lenition(root: str) -> str:
    root = nfc(root)
    if not is_lenitable(root):
        return root
    h = "H" if root.isupper() and len(root) > 1 else "h"
    return root[0] + h + root[1:]


def is_lenited(word: str) -> bool:
    return any(kind is MutationKind.LENITION for kind, _ in detect_and_strip_mutation(word))


_LENITION_RE = re.compile(rf"^([bcdfgmpt])h(.+)$|^(s)h([{_V}lnr].*)$", re.I)
_ECLIPSIS_RE = re.compile(
    rf"^(?:m(b)|g(c)|n(d)|bh(f)|n(g)|b(p)|d(t))(.+)$|^n-([{_V}].*)$", re.I
)
# nAthair: eclipsis before a capital vowel needs no hyphen
_ECLIPSIS_CAP_RE = re.compile(r"^n([AÁEÉIÍOÓUÚ].*)$")
_T_PREFIX_RE = re.compile(rf"^t-([{_V}].*)$|^t(s[{_V}].*)$", re.I)
_H_PREFIX_RE = re.compile(rf"^h-?([{_V}].*)$", re.I)


def detect_and_strip_mutation(word: str) -> list[tuple[MutationKind, str]]:
    """All plausible (mutation, root) readings; (NONE, word) always first."""
    word = nfc(word)
    readings = [(MutationKind.NONE, word)]
    m = _LENITION_RE.match(word)
    # bhf- is eclipsis of f, not lenition of b
    if m and not word.lower().startswith("bhf"):
        head, rest = (m.group(1), m.group(2)) if m.group(1) else (m.group(3), m.group(4))
        readings.append((MutationKind.LENITION, head + rest))
    m = _ECLIPSIS_RE.match(word) or _ECLIPSIS_CAP_RE.match(word)
    if m and m.re is _ECLIPSIS_CAP_RE:
        readings.append((MutationKind.ECLIPSIS, m.group(1)))
    elif m:
        if m.group(9) is not None:
            root = m.group(9)
        else:
            head = next(g for g in m.groups()[:7] if g)
            root = head + m.group(8)
        # the eclipsed consonant keeps its place; capitalise if the word was
        if word[:1].isupper() and not root[:1].isupper():
            root = root[:1].upper() + root[1:]
        readings.append((MutationKind.ECLIPSIS, root))
    m = _T_PREFIX_RE.match(word)
    if m:
        readings.append((MutationKind.T_PREFIX, m.group(1) or m.group(2)))
    m = _H_PREFIX_RE.match(word)
    if m:
        readings.append((MutationKind.H_PREFIX, m.group(1)))
    return readings


def apply_mutation(kind: MutationKind, root: str) -> str:
    """Inverse of the stripping done by detect_and_strip_mutation."""
    r = nfc(root)
    if kind is MutationKind.NONE:
        return r
    if kind is MutationKind.LENITION:
        return apply_lenition(r)
    if kind is MutationKind.ECLIPSIS:
        first = r[:1].lower()
        prefix = {"b": "m", "c": "g", "d": "n", "f": "bh", "g": "n", "p": "b", "t": "d"}.get(first)
        if prefix is not None:
            return prefix + r
        if first in VOWELS:
            return "n-" + r
        return r
    if kind is MutationKind.T_PREFIX:
        if r[:1].lower() == "s":
            return "t" + r
        return "t-" + r
    if kind is MutationKind.H_PREFIX:
        return "h" + r
    raise ValueError(kind)


def slenderize(stem: str) -> str | None:
    """Make the final consonant slender (weak plural / genitive).

    Returns None when the stem already ends slender or ends in a vowel.
    """
    s = nfc(stem)
    groups = vowel_groups(s)
    if not groups:
        return None
    start, end = groups[-1]
    if end == len(s):
        return None
    if classify_vowel(s[end - 1]) is VowelClass.SLENDER:
        return None
    group = s[start:end].lower()
    if group in ("ea", "éa"):
        # -éad -> -éid, -ead -> -eid
        return s[: end - 1] + "i" + s[end:]
    return s[:end] + "i" + s[end:]


def illegal_geminates(word: str) -> list[str]:
    w = nfc(word).lower()
    found = []
    for a, b in zip(w, w[1:]):
        if a == b and a.isalpha() and a not in VOWELS and a + b not in NATIVE_GEMINATES:
            found.append(a + b)
    return found

"""Immutable wordlists and token lookup.

File format, one entry per line (UTF-8, LF)::

    form[<TAB>pos[<TAB>native|loan]]

``pos`` is one of Noun, Verb, Adjective, Other; missing means Unknown.
Lines starting with ``#`` and blank lines are ignored.
"""
from __future__ import annotations

import bisect
import io
import logging
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import BinaryIO, Iterable

from .orthography import MutationKind, detect_and_strip_mutation, nfc

log = logging.getLogger(__name__)


class LexiconError(Exception):
    pass


class LexiconFormatError(LexiconError):
    pass


class LexiconConfigError(LexiconError):
    pass


class POS(str, Enum):
    NOUN = "Noun"
    VERB = "Verb"
    ADJECTIVE = "Adjective"
    OTHER = "Other"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class LexEntry:
    form: str
    pos: POS = POS.UNKNOWN
    native: bool = True


class LookupStatus(str, Enum):
    EXACT = "Exact"
    VIA_MUTATION = "ViaMutation"
    ABSENT = "Absent"


@dataclass(frozen=True)
class LookupResult:
    status: LookupStatus
    entry: LexEntry | None = None
    mutation: MutationKind = MutationKind.NONE
    root: str | None = None

    @property
    def found(self) -> bool:
        return self.status is not LookupStatus.ABSENT


def normalize_form(text: str) -> str:
    return nfc(text).strip().lower()


class Lexicon:
    """Read-only wordlist keyed by normalized form."""

    def __init__(self, entries: Iterable[LexEntry], warnings: Iterable[str] = (), name: str = ""):
        by_form: dict[str, list[LexEntry]] = {}
        for e in entries:
            bucket = by_form.setdefault(e.form, [])
            if all(x.pos != e.pos for x in bucket):
                bucket.append(e)
        self._by_form = {k: tuple(v) for k, v in by_form.items()}
        self._sorted = sorted(self._by_form)
        self.warnings = tuple(warnings)
        self.name = name

    def __contains__(self, form: str) -> bool:
        return normalize_form(form) in self._by_form

    def __len__(self) -> int:
        return len(self._by_form)

    def __iter__(self):
        return iter(self._sorted)

    def entries(self, form: str) -> tuple[LexEntry, ...]:
        return self._by_form.get(normalize_form(form), ())

    def all_entries(self) -> list[LexEntry]:
        return [e for f in self._sorted for e in self._by_form[f]]

    def has_pos(self, form: str, *pos: POS) -> bool:
        return any(e.pos in pos for e in self.entries(form))

    def first(self, form: str) -> LexEntry | None:
        got = self.entries(form)
        return got[0] if got else None

    def words_starting_with(self, prefix: str) -> list[str]:
        prefix = normalize_form(prefix)
        i = bisect.bisect_left(self._sorted, prefix)
        out = []
        while i < len(self._sorted) and self._sorted[i].startswith(prefix):
            out.append(self._sorted[i])
            i += 1
        return out


_NATIVE_FLAGS = {"native": True, "loan": False}


def load_lexicon(source: BinaryIO | bytes, name: str = "") -> Lexicon:
    raw = source if isinstance(source, bytes) else source.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise LexiconFormatError(f"{name or 'lexicon'}: not valid UTF-8 ({exc})") from exc
    entries, warnings = [], []
    for lineno, line in enumerate(text.split("\n"), 1):
        line = line.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        form = normalize_form(parts[0])
        if not form or len(parts) > 3:
            warnings.append(f"line {lineno}: malformed entry {line!r}")
            continue
        pos = POS.UNKNOWN
        if len(parts) > 1 and parts[1]:
            try:
                pos = POS(parts[1])
            except ValueError:
                warnings.append(f"line {lineno}: unknown pos {parts[1]!r}")
                continue
        native = True
        if len(parts) > 2:
            if parts[2] not in _NATIVE_FLAGS:
                warnings.append(f"line {lineno}: bad native flag {parts[2]!r}")
                continue
            native = _NATIVE_FLAGS[parts[2]]
        entries.append(LexEntry(form, pos, native))
    if not entries:
        raise LexiconConfigError(f"{name or 'lexicon'}: no entries")
    for w in warnings:
        log.warning("%s: %s", name or "lexicon", w)
    return Lexicon(entries, warnings, name)


def load_lexicon_path(path: str | Path) -> Lexicon:
    path = Path(path)
    with path.open("rb") as fh:
        return load_lexicon(fh, name=str(path))


def _bundled(name: str) -> Lexicon:
    data = resources.files("confabga.data").joinpath(name).read_bytes()
    return load_lexicon(io.BytesIO(data), name=name)


def default_irish() -> Lexicon:
    return _bundled("irish.tsv")


def default_english() -> Lexicon:
    return _bundled("english.tsv")


def lookup(lex: Lexicon, token: str) -> LookupResult:
    """Exact match first, then each mutation reading in fixed order."""
    token = normalize_form(token)
    if not token:
        raise ValueError("empty token")
    for kind, root in detect_and_strip_mutation(token):
        entry = lex.first(root)
        if entry is None:
            continue
        if kind is MutationKind.NONE:
            return LookupResult(LookupStatus.EXACT, entry)
        return LookupResult(LookupStatus.VIA_MUTATION, entry, kind, root)
    return LookupResult(LookupStatus.ABSENT)


def english_root_match(
    eng: Lexicon, fragment: str, min_len: int = 3, truncated: bool = False, min_trunc: int = 4
) -> str | None:
    """Longest English word equal to ``fragment`` or a prefix of it.

    With ``truncated=True`` a fragment that is a clipped English word
    (``simul`` from ``simulator``) also matches, provided it keeps at least
    ``min_trunc`` letters and 40% of the word; the shortest such word wins.
    """
    frag = normalize_form(fragment)
    if len(frag) < min_len:
        return None
    for i in range(len(frag), min_len - 1, -1):
        if frag[:i] in eng:
            return frag[:i]
    if truncated:
        hits = english_truncations(eng, frag, min_trunc, ratio=0.4)
        if hits:
            return hits[0]
    return None


def english_truncations(eng: Lexicon, fragment: str, min_len: int = 4, ratio: float = 0.5) -> list[str]:
    """English words that ``fragment`` clips, shortest first.

    The fragment must keep ``min_len`` letters and ``ratio`` of the word.
    """
    frag = normalize_form(fragment)
    if len(frag) < min_len:
        return []
    hits = [w for w in eng.words_starting_with(frag) if w != frag and len(frag) >= ratio * len(w)]
    return sorted(hits, key=lambda w: (len(w), w))


@dataclass(frozen=True)
class Lexicons:
    """The Irish lexicon and the English wordlist used together."""

    irish: Lexicon
    english: Lexicon

    @classmethod
    def bundled(cls) -> "Lexicons":
        return cls(default_irish(), default_english())

    @classmethod
    def from_paths(cls, irish: str | Path | None = None, english: str | Path | None = None) -> "Lexicons":
        return cls(
            load_lexicon_path(irish) if irish else default_irish(),
            load_lexicon_path(english) if english else default_english(),
        )

"""Corpus-level analysis: tokenise, find OOV tokens, classify, aggregate.

Rates are hallucinations per 1,000 tokens, truncated (not rounded) to two
decimals with :mod:`decimal` so float error never shifts the last digit.
"""
from __future__ import annotations

import csv
import io
import json
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from decimal import ROUND_DOWN, Decimal
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator

from .classifier import NOUN_CONTEXT, AnalyzedToken, ClassifierConfig, HallucinationRecord, classify_token
from .lexicon import Lexicon, Lexicons, lookup, normalize_form
from .orthography import vowel_groups


class AlignmentError(ValueError):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class InputFormatError(ValueError):
    pass


class UsageError(ValueError):
    pass


class OutputFormat(str, Enum):
    JSONL = "jsonl"
    CSV = "csv"
    TEXT = "text"


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int
    index: int

    @property
    def is_word(self) -> bool:
        """Letters only (plus internal ' and -), at least one vowel."""
        return not any(c.isdigit() for c in self.text) and bool(vowel_groups(self.text))


# letters/digits with internal apostrophes or hyphens (b'fhéidir, n-athair)
_TOKEN = re.compile(r"[^\W_]+(?:['’\-][^\W_]+)*")


def tokenize(text: str) -> list[Token]:
    return [Token(m.group(), m.start(), m.end(), i) for i, m in enumerate(_TOKEN.finditer(text))]


@dataclass(frozen=True)
class DocumentPair:
    doc_id: str
    sentences: tuple[tuple[str, str], ...]
    model_tag: str = ""

    @classmethod
    def from_lists(cls, doc_id: str, source: list[str], target: list[str], model_tag: str = "") -> "DocumentPair":
        if len(source) != len(target):
            index = min(len(source), len(target))
            raise AlignmentError(
                f"{doc_id}: {len(source)} source lines but {len(target)} target lines "
                f"(first unmatched sentence {index})", index
            )
        return cls(doc_id, tuple(zip(source, target)), model_tag)


@dataclass
class Report:
    model_tag: str
    token_count: int
    records: list[HallucinationRecord] = field(default_factory=list)
    doc_ids: list[str] = field(default_factory=list)

    @property
    def counts(self) -> dict[tuple[str, bool], int]:
        """(POS, conformant) -> count; POS is Verb, Noun or Other."""
        c = Counter((r.pos or "Other", r.conformant) for r in self.records)
        return dict(sorted(c.items()))

    @property
    def rate_per_1000(self) -> Decimal:
        return hallucination_rate(len(self.records), self.token_count)

    def summary(self) -> dict:
        counts = self.counts
        by_pos = {}
        for pos in ("Verb", "Noun", "Other"):
            rules, no_rules = counts.get((pos, True), 0), counts.get((pos, False), 0)
            if rules or no_rules or pos != "Other":
                by_pos[pos] = {"rules": rules, "no_rules": no_rules, "total": rules + no_rules}
        return {
            "summary": True,
            "model": self.model_tag,
            "documents": list(self.doc_ids),
            "tokens": self.token_count,
            "count": len(self.records),
            "rate_per_1000": str(self.rate_per_1000) if self.token_count else None,
            "by_pos": by_pos,
        }


def hallucination_rate(count: int, tokens: int) -> Decimal:
    """Hallucinations per 1,000 tokens, truncated to 2 decimal places."""
    if count < 0 or tokens < 0:
        raise ValueError("count and tokens must be non-negative")
    if tokens == 0:
        raise ZeroDivisionError("token count is zero")
    return (Decimal(1000 * count) / Decimal(tokens)).quantize(Decimal("0.01"), rounding=ROUND_DOWN)


# --------------------------------------------------------------------------
# analysis


def _known(lex: Lexicon, word: str) -> bool:
    if lookup(lex, word).found:
        return True
    w = normalize_form(word)
    # elided particles: b'fhéidir, d'fhéadfadh, m'athair
    if "'" in w or "’" in w:
        tail = re.split(r"['’]", w)[-1]
        if tail and lookup(lex, tail).found:
            return True
    if "-" in w:
        parts = [p for p in w.split("-") if p]
        # eclipsis particle n-/t- is handled by lookup; here every part must be known
        if parts and all(lookup(lex, p).found for p in parts):
            return True
    return False


def find_oov(
    target: str, source: str, lexicons: Lexicons, sentence_id: int = 0
) -> Iterator[AnalyzedToken]:
    """OOV word tokens of one target sentence.

    Tokens copied verbatim from the source (names, acronyms, untranslated
    terms) and tokens without a vowel or with digits are not candidates.
    """
    source_words = {normalize_form(t.text) for t in tokenize(source)}
    prev = None
    for tok in tokenize(target):
        if tok.is_word and normalize_form(tok.text) not in source_words and not _known(lexicons.irish, tok.text):
            yield AnalyzedToken(tok.text, sentence_id, tok.index, prev)
        prev = tok.text


def analyze_document(
    pair: DocumentPair,
    lexicons: Lexicons,
    config: ClassifierConfig | None = None,
    token_count_override: int | None = None,
) -> Report:
    config = config or ClassifierConfig()
    records: list[HallucinationRecord] = []
    tokens = 0
    # invented words recur; the result depends only on the word, whether the
    # previous word forces a noun reading, and the source sentence
    memo: dict[tuple, HallucinationRecord] = {}
    for i, sent in enumerate(pair.sentences):
        if not (isinstance(sent, tuple) and len(sent) == 2 and all(isinstance(s, str) for s in sent)):
            raise AlignmentError(f"{pair.doc_id}: sentence {i} is not a (source, target) pair", i)
        source, target = sent
        tokens += len(tokenize(target))
        for tok in find_oov(target, source, lexicons, i):
            key = (tok.surface, tok.prev is not None and normalize_form(tok.prev) in NOUN_CONTEXT, source)
            if key not in memo:
                memo[key] = classify_token(tok, source, lexicons, config)
            records.append(replace(memo[key], sentence_id=i, position=tok.position))
    if token_count_override is not None:
        if token_count_override <= 0:
            raise ValueError("token count override must be positive")
        tokens = token_count_override
    return Report(pair.model_tag, tokens, records, [pair.doc_id])


def merge_reports(reports: Iterable[Report], model_tag: str | None = None, token_count_override: int | None = None) -> Report:
    reports = list(reports)
    tag = model_tag if model_tag is not None else (reports[0].model_tag if reports else "")
    merged = Report(tag, sum(r.token_count for r in reports))
    for r in reports:
        merged.records.extend(r.records)
        merged.doc_ids.extend(r.doc_ids)
    if token_count_override is not None:
        merged.token_count = token_count_override
    return merged


# --------------------------------------------------------------------------
# input


def read_parallel(source_path: str | Path, target_path: str | Path, doc_id: str | None = None, model_tag: str = "") -> DocumentPair:
    src = _read_lines(source_path)
    tgt = _read_lines(target_path)
    return DocumentPair.from_lists(doc_id or Path(target_path).stem, src, tgt, model_tag)


def _read_lines(path: str | Path) -> list[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise InputFormatError(f"{path}: not valid UTF-8") from exc
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line.rstrip("\r") for line in lines]


def read_jsonl(path: str | Path, model_tag: str | None = None) -> list[DocumentPair]:
    """Lines of ``{"id", "src", "tgt"}`` with optional ``doc`` and ``model``.

    Consecutive lines sharing (doc, model) form one document.
    """
    groups: dict[tuple[str, str], list[tuple[str, str]]] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise InputFormatError(f"{path}: not valid UTF-8") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            src, tgt = obj["src"], obj["tgt"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise InputFormatError(f"{path}:{lineno}: expected an object with src and tgt") from exc
        if not isinstance(src, str) or not isinstance(tgt, str):
            raise InputFormatError(f"{path}:{lineno}: src and tgt must be strings")
        key = (str(obj.get("doc", Path(path).stem)), model_tag or str(obj.get("model", "")))
        groups.setdefault(key, []).append((src, tgt))
    return [DocumentPair(doc, tuple(sents), model) for (doc, model), sents in groups.items()]


# --------------------------------------------------------------------------
# output

CSV_FIELDS = [
    "model", "doc", "sentence_id", "position", "surface", "pos", "category",
    "conformant", "violations", "source_word", "similarity",
]


def emit_report(report: Report, fmt: OutputFormat | str) -> bytes:
    try:
        fmt = OutputFormat(fmt)
    except ValueError:
        raise UsageError(f"unsupported format {fmt!r}; choose from {', '.join(f.value for f in OutputFormat)}") from None
    if fmt is OutputFormat.JSONL:
        lines = [json.dumps({"model": report.model_tag, **r.to_dict()}, ensure_ascii=False) for r in report.records]
        lines.append(json.dumps(report.summary(), ensure_ascii=False))
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt is OutputFormat.CSV:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        doc = ";".join(report.doc_ids)
        for r in report.records:
            writer.writerow({
                "model": report.model_tag, "doc": doc, "sentence_id": r.sentence_id,
                "position": r.position, "surface": r.surface, "pos": r.pos or "",
                "category": r.category.value, "conformant": str(r.conformant).lower(),
                "violations": ";".join(v.rule_id for v in r.verdict.violations),
                "source_word": r.source_link[0] if r.source_link else "",
                "similarity": r.source_link[1] if r.source_link else "",
            })
        return buf.getvalue().encode("utf-8")
    return render_text([report]).encode("utf-8")


def render_text(reports: list[Report]) -> str:
    """Frequency, per-POS Rules/No Rules and per-record tables."""
    out = []
    rows = [("Model", "Verb", "Noun", "Total", "Rate")]
    for r in reports:
        c = r.counts
        verbs = c.get(("Verb", True), 0) + c.get(("Verb", False), 0)
        nouns = len(r.records) - verbs
        rate = str(r.rate_per_1000) if r.token_count else "-"
        rows.append((r.model_tag or "-", f"{verbs:02d}", f"{nouns:02d}", f"{len(r.records):02d}", rate))
    out.append(_table(rows))
    for pos in ("Verb", "Noun"):
        rows = [(pos, "Rules", "No Rules", "Total", "% Rules")]
        for r in reports:
            c = r.counts
            yes, no = c.get((pos, True), 0), c.get((pos, False), 0)
            if pos == "Noun":
                yes += c.get(("Other", True), 0)
                no += c.get(("Other", False), 0)
            pct = f"{100 * yes // (yes + no)}" if yes + no else "-"
            rows.append((r.model_tag or "-", f"{yes:02d}", f"{no:02d}", f"{yes + no:02d}", pct))
        out.append(_table(rows))
    rows = [("Sent", "Word", "Category", "Verdict", "Evidence")]
    for r in reports:
        for rec in r.records:
            verdict = "rules" if rec.conformant else "no rules: " + ",".join(sorted(rec.verdict.rule_ids))
            rows.append((str(rec.sentence_id), rec.surface, rec.category.value, verdict, rec.evidence[0] if rec.evidence else ""))
    if len(rows) > 1:
        out.append(_table(rows))
    return "\n".join(out)


def _table(rows: list[tuple[str, ...]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"

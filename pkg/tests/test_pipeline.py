import csv
import io
import json
from decimal import Decimal

import pytest

from confabga.pipeline import (
    CSV_FIELDS,
    AlignmentError,
    DocumentPair,
    InputFormatError,
    OutputFormat,
    UsageError,
    analyze_document,
    emit_report,
    find_oov,
    hallucination_rate,
    merge_reports,
    read_jsonl,
    read_parallel,
    render_text,
    tokenize,
)


def test_rate_truncates():
    assert hallucination_rate(21, 24194) == Decimal("0.86")
    assert hallucination_rate(52, 24194) == Decimal("2.14")
    # 2/3 per mille is 0.666..., truncated rather than rounded
    assert hallucination_rate(2, 3000) == Decimal("0.66")
    assert hallucination_rate(0, 10) == Decimal("0.00")


def test_rate_errors():
    with pytest.raises(ZeroDivisionError):
        hallucination_rate(1, 0)
    with pytest.raises(ValueError):
        hallucination_rate(-1, 10)


def test_tokenize():
    toks = tokenize("Tá gaothmhoillí nua-aimseartha, b'fhéidir!")
    assert [t.text for t in toks] == ["Tá", "gaothmhoillí", "nua-aimseartha", "b'fhéidir"]
    assert toks[1].start == 3 and toks[1].index == 1


def test_token_is_word():
    toks = tokenize("X174 MCU gaoth")
    assert [t.is_word for t in toks] == [False, True, True]


def test_find_oov_skips_copied_and_known(lexicons):
    got = [t.surface for t in find_oov("micirialtóir (MCU) gaoth", "a microcontroller (MCU)", lexicons)]
    assert got == ["micirialtóir"]


def test_find_oov_prev(lexicons):
    (tok,) = find_oov("trí mhilliún radaim", "three million rads", lexicons)
    assert tok.prev == "mhilliún"


def test_alignment_error():
    with pytest.raises(AlignmentError) as ei:
        DocumentPair.from_lists("d", ["a", "b"], ["x"])
    assert ei.value.index == 1


def test_analyze_document(lexicons):
    pair = DocumentPair.from_lists("d", ["Or, in this case, windmill."], ["Nó, anseo, gaothmhoill ."], "Mini")
    report = analyze_document(pair, lexicons)
    assert [r.surface for r in report.records] == ["gaothmhoill"]
    assert report.token_count == 3
    assert report.counts == {("Noun", True): 1}


def test_override_and_merge(lexicons):
    pair = DocumentPair.from_lists("d", ["windmill"], ["gaothmhoill"], "m")
    r1 = analyze_document(pair, lexicons)
    r2 = analyze_document(pair, lexicons, token_count_override=1000)
    assert r2.rate_per_1000 == Decimal("1.00")
    merged = merge_reports([r1, r2])
    assert merged.token_count == 1001 and len(merged.records) == 2
    with pytest.raises(ValueError):
        analyze_document(pair, lexicons, token_count_override=0)


def test_read_parallel(tmp_path):
    (tmp_path / "s.txt").write_text("one\ntwo\n", encoding="utf-8")
    (tmp_path / "t.txt").write_text("aon\ndó\n", encoding="utf-8")
    (tmp_path / "bad.txt").write_text("aon\n", encoding="utf-8")
    pair = read_parallel(tmp_path / "s.txt", tmp_path / "t.txt")
    assert pair.doc_id == "t" and len(pair.sentences) == 2
    with pytest.raises(AlignmentError):
        read_parallel(tmp_path / "s.txt", tmp_path / "bad.txt")


def test_read_jsonl_errors(tmp_path):
    p = tmp_path / "x.jsonl"
    p.write_text('{"src": "a"}\n', encoding="utf-8")
    with pytest.raises(InputFormatError):
        read_jsonl(p)
    p.write_bytes(b"\xff\n")
    with pytest.raises(InputFormatError):
        read_jsonl(p)


def test_read_jsonl_groups(fixtures_dir):
    docs = read_jsonl(fixtures_dir / "gpt4.jsonl")
    assert {d.model_tag for d in docs} == {"GPT4"}
    assert sum(len(d.sentences) for d in docs) == 21


def _report(lexicons):
    pair = DocumentPair.from_lists("d", ["windmill", "simulation"], ["gaothmhoill", "Simuláid"], "Mini")
    return analyze_document(pair, lexicons)


def test_emit_jsonl(lexicons):
    lines = emit_report(_report(lexicons), OutputFormat.JSONL).decode().splitlines()
    rows = [json.loads(x) for x in lines]
    assert rows[-1]["summary"] and rows[-1]["count"] == 2
    assert rows[-1]["by_pos"]["Noun"] == {"rules": 1, "no_rules": 1, "total": 2}
    assert rows[0]["model"] == "Mini"


def test_emit_csv(lexicons):
    data = emit_report(_report(lexicons), "csv").decode()
    rows = list(csv.DictReader(io.StringIO(data)))
    assert list(rows[0]) == CSV_FIELDS
    assert rows[1]["violations"] == "suffix-correspondence"


def test_emit_text(lexicons):
    text = render_text([_report(lexicons)])
    assert "Rules" in text and "gaothmhoill" in text


def test_emit_bad_format(lexicons):
    with pytest.raises(UsageError):
        emit_report(_report(lexicons), "xml")

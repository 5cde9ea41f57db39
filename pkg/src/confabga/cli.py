"""confabga command line.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 usage or input-format error, 2 internal error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from pathlib import Path

from . import __version__
from .classifier import (
    AnalyzedToken,
    Category,
    ClassifierConfig,
    ConfigError,
    HallucinationRecord,
    load_config,
    phonetic_similarity,
    classify_token,
)
from .generator import GenerationError, GenSpec, generate
from .lexicon import LexiconError, Lexicons, lookup
from .nounmorph import validate_noun
from .orthography import UnanalyzableToken
from .pipeline import (
    AlignmentError,
    InputFormatError,
    OutputFormat,
    Report,
    UsageError,
    analyze_document,
    emit_report,
    merge_reports,
    read_jsonl,
    read_parallel,
    render_text,
)
from .verbmorph import NotAVerb, validate_verb

log = logging.getLogger("confabga")

ENV_IRISH = "CONFABGA_IRISH_LEXICON"
ENV_ENGLISH = "CONFABGA_ENGLISH_LEXICON"
ENV_CONFIG = "CONFABGA_CONFIG"

PATTERNS = {
    "compound": Category.COMPOUND,
    "lazy-gaelicisation": Category.LAZY_GAELICISATION,
    "good-confabulation": Category.GOOD_CONFABULATION,
    "code-switching": Category.CODE_SWITCHING,
    "prefix": Category.PREFIX,
    "suffix": Category.SUFFIX,
    "noun-conjugation": Category.NOUN_CONJUGATION,
    "english-conjugated": Category.ENGLISH_CONJUGATED,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lex", help=f"Irish lexicon TSV (env {ENV_IRISH}; default: bundled)")
    p.add_argument("--eng", help=f"English wordlist TSV (env {ENV_ENGLISH}; default: bundled)")
    p.add_argument("--config", help=f"classifier config, key = value lines (env {ENV_CONFIG})")
    p.add_argument("--threshold", type=float, help="lazy-gaelicisation similarity threshold")
    p.add_argument("--format", choices=[f.value for f in OutputFormat], default=None)
    p.add_argument("-o", "--output", help="write data here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="confabga", description="Detect and classify invented words in Irish MT output.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="analyse a parallel corpus and report hallucinations")
    _common(p)
    p.add_argument("--src", help="English source, one sentence per line")
    p.add_argument("--tgt", help="Irish target, line-aligned with --src")
    p.add_argument("--jsonl", action="append", default=[], help='JSONL with {"id","src","tgt"} per line; repeatable')
    p.add_argument("--model", default=None, help="model tag for the report")
    p.add_argument("--doc-id", default=None)
    p.add_argument("--token-count-override", type=int, default=None,
                   help="use this token total for the rate instead of our tokenizer's count")

    p = sub.add_parser("check", help="look up and analyse a single word")
    _common(p)
    p.add_argument("word")
    p.add_argument("--src-word", action="append", default=[], help="English source word(s) for similarity")
    p.add_argument("--prev", default=None, help="preceding Irish word (article, numeral, ...)")

    p = sub.add_parser("classify", help="classify OOV words; reads JSONL {word, src, prev} or positional words")
    _common(p)
    p.add_argument("words", nargs="*")
    p.add_argument("--input", help="JSONL file, '-' for stdin")
    p.add_argument("--src", default="", help="source sentence for positional words")

    p = sub.add_parser("generate", help="synthesise labelled confabulations")
    _common(p)
    p.add_argument("--pattern", required=True, help="one of: " + ", ".join(PATTERNS))
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--broken", action="store_true", help="emit rule-violating words instead")

    p = sub.add_parser("report", help="re-render JSONL reports from analyze as text or CSV")
    p.add_argument("reports", nargs="+")
    p.add_argument("--format", choices=[f.value for f in OutputFormat], default="text")
    p.add_argument("-o", "--output")
    return ap


def _lexicons(args) -> Lexicons:
    irish = args.lex or os.environ.get(ENV_IRISH)
    english = args.eng or os.environ.get(ENV_ENGLISH)
    for label, path in (("Irish lexicon", irish), ("English wordlist", english)):
        if path and not Path(path).is_file():
            raise UsageError(f"{label} not found: {path}")
    return Lexicons.from_paths(irish, english)


def _config(args) -> ClassifierConfig:
    path = args.config or os.environ.get(ENV_CONFIG)
    if path and not Path(path).is_file():
        raise UsageError(f"config not found: {path}")
    cfg = load_config(path) if path else ClassifierConfig()
    if args.threshold is not None:
        cfg = ClassifierConfig(args.threshold, cfg.min_root_len, cfg.category_order)
    return cfg


def _write(args, data: bytes) -> None:
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def cmd_analyze(args) -> int:
    if not args.jsonl and not (args.src and args.tgt):
        raise UsageError("give --src and --tgt, or --jsonl")
    if bool(args.src) != bool(args.tgt):
        raise UsageError("--src and --tgt must be given together")
    lex = _lexicons(args)
    cfg = _config(args)
    docs = []
    if args.src:
        docs.append(read_parallel(args.src, args.tgt, args.doc_id, args.model or ""))
    for path in args.jsonl:
        docs.extend(read_jsonl(path, args.model))
    by_model: dict[str, list[Report]] = {}
    for doc in docs:
        by_model.setdefault(doc.model_tag, []).append(analyze_document(doc, lex, cfg))
    reports = [merge_reports(rs, tag, args.token_count_override) for tag, rs in by_model.items()]
    fmt = OutputFormat(args.format or "jsonl")
    if fmt is OutputFormat.TEXT:
        data = render_text(reports).encode("utf-8")
    elif fmt is OutputFormat.CSV:
        chunks = [emit_report(r, fmt).decode("utf-8") for r in reports]
        data = (chunks[0] + "".join(c.split("\n", 1)[1] for c in chunks[1:])).encode("utf-8")
    else:
        data = b"".join(emit_report(r, fmt) for r in reports)
    _write(args, data)
    for r in reports:
        rate = f"{r.rate_per_1000}/1000" if r.token_count else "no tokens"
        tag = f"{r.model_tag}: " if r.model_tag else ""
        print(f"{tag}{len(r.records)} hallucinations, {rate}", file=sys.stderr)
    return 0


def _check(word: str, args, lex: Lexicons, cfg: ClassifierConfig) -> dict:
    res = lookup(lex.irish, word)
    if res.found:
        out = {"word": word, "status": res.status.value, "root": res.root or res.entry.form,
               "mutation": res.mutation.value}
        return out
    out: dict = {"word": word, "status": "OOV"}
    try:
        out["verb"] = validate_verb(word, None, lex.irish, lex.english).to_dict()
    except NotAVerb:
        pass
    out["noun"] = validate_noun(word, lex.irish, lex.english).to_dict()
    rec = classify_token(AnalyzedToken(word, prev=args.prev), args.src_word, lex, cfg)
    out["record"] = rec.to_dict()
    if args.src_word:
        out["similarity"] = {w: phonetic_similarity(w, word) for w in args.src_word}
    return out


_SPLIT = re.compile(r"[^\W\d_]+\+[^\W\d_]+")


def _check_text(info: dict) -> str:
    if info["status"] != "OOV":
        how = "" if info["status"] == "Exact" else f" via {info['mutation']} of {info['root']}"
        return f"in lexicon{how}\n"
    rec = info["record"]
    split = next((m.group() for e in rec["evidence"] for m in [_SPLIT.search(e)] if m), None)
    head = f"OOV; {rec['category']}{f'({split})' if split else ''}; "
    if rec["conformant"]:
        head += "conformant"
    else:
        head += "violating: " + "; ".join(f"{v['rule_id']} ({v['detail']})" for v in rec["violations"])
    lines = [head] + [f"  {e}" for e in rec["evidence"]]
    if "similarity" in info:
        lines += [f"  similarity to {w}: {s:.2f}" for w, s in info["similarity"].items()]
    return "\n".join(lines) + "\n"


def cmd_check(args) -> int:
    word = args.word.strip()
    if not word:
        raise UsageError("empty word")
    lex = _lexicons(args)
    info = _check(word, args, lex, _config(args))
    if (args.format or "text") == "text":
        data = _check_text(info)
    else:
        data = json.dumps(info, ensure_ascii=False) + "\n"
    _write(args, data.encode("utf-8"))
    return 0


def _classify_inputs(args):
    if args.input:
        fh = sys.stdin if args.input == "-" else open(args.input, encoding="utf-8")
        with fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                    yield obj["word"], obj.get("src", ""), obj.get("prev")
                except (json.JSONDecodeError, KeyError, TypeError) as exc:
                    raise InputFormatError(f"{args.input}:{lineno}: expected an object with a word") from exc
    for w in args.words:
        yield w, args.src, None


def cmd_classify(args) -> int:
    if not args.input and not args.words:
        raise UsageError("give words or --input")
    lex = _lexicons(args)
    cfg = _config(args)
    fmt = OutputFormat(args.format or "jsonl")
    records = []
    for i, (word, src, prev) in enumerate(_classify_inputs(args)):
        if lookup(lex.irish, word).found:
            log.info("%s is in the lexicon; skipped", word)
            continue
        records.append(classify_token(AnalyzedToken(word, i, 0, prev), src, lex, cfg))
    report = Report("", 0, records)
    if fmt is OutputFormat.JSONL:
        data = "".join(json.dumps(r.to_dict(), ensure_ascii=False) + "\n" for r in records).encode("utf-8")
    else:
        data = emit_report(report, fmt) if fmt is OutputFormat.CSV else render_text([report]).encode("utf-8")
    _write(args, data)
    return 0


def cmd_generate(args) -> int:
    pattern = PATTERNS.get(args.pattern)
    if pattern is None:
        raise UsageError(f"unknown pattern {args.pattern!r}; valid patterns: {', '.join(PATTERNS)}")
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    lex = _lexicons(args)
    items = generate(GenSpec(pattern, args.count, args.seed, not args.broken), lex)
    fmt = args.format or "jsonl"
    if fmt == "jsonl":
        data = "".join(json.dumps(g.to_dict(), ensure_ascii=False) + "\n" for g in items)
    elif fmt == "csv":
        rows = ["word,pattern,conformant,rule_violated"]
        rows += [f"{g.word},{g.pattern.value},{str(g.conformant).lower()},{g.rule_violated or ''}" for g in items]
        data = "\n".join(rows) + "\n"
    else:
        data = "".join(f"{g.word}\t{g.pattern.value}\t{'conformant' if g.conformant else 'violating'}\n" for g in items)
    _write(args, data.encode("utf-8"))
    return 0


def _read_report(path: str) -> list[Report]:
    reports: dict[str, Report] = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except UnicodeDecodeError as exc:
        raise InputFormatError(f"{path}: not valid UTF-8") from exc
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            model = obj.get("model", "")
            rep = reports.setdefault(model, Report(model, 0))
            if obj.get("summary"):
                rep.token_count = int(obj.get("tokens") or 0)
                rep.doc_ids.extend(obj.get("documents", []))
            else:
                rep.records.append(HallucinationRecord.from_dict(obj))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"{path}:{lineno}: not a report line ({exc})") from exc
    return list(reports.values())


def cmd_report(args) -> int:
    reports = [r for path in args.reports for r in _read_report(path)]
    fmt = OutputFormat(args.format)
    if fmt is OutputFormat.TEXT:
        data = render_text(reports).encode("utf-8")
    else:
        data = b"".join(emit_report(r, fmt) for r in reports)
    _write(args, data)
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "check": cmd_check,
    "classify": cmd_classify,
    "generate": cmd_generate,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, InputFormatError, AlignmentError, ConfigError, LexiconError,
            UnanalyzableToken, FileNotFoundError, IsADirectoryError) as exc:
        print(f"confabga: error: {exc}", file=sys.stderr)
        return 1
    except GenerationError as exc:
        print(f"confabga: generation failed: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0
    except Exception as exc:  # noqa: BLE001
        log.debug("internal error", exc_info=True)
        print(f"confabga: internal error: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Rule verdicts and the data-file backed affix inventories."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path


@dataclass(frozen=True)
class Violation:
    rule_id: str
    detail: str


@dataclass(frozen=True)
class RuleVerdict:
    violations: tuple[Violation, ...] = field(default_factory=tuple)
    # human-readable description of the passing reading, if any
    reading: str | None = None

    @property
    def conformant(self) -> bool:
        return not self.violations

    @property
    def rule_ids(self) -> set[str]:
        return {v.rule_id for v in self.violations}

    def to_dict(self) -> dict:
        return {
            "conformant": self.conformant,
            "violations": [{"rule_id": v.rule_id, "detail": v.detail} for v in self.violations],
        }


@dataclass(frozen=True)
class Prefix:
    form: str
    kind: str
    lenites: bool

    @property
    def native(self) -> bool:
        return self.kind != "source"


@dataclass(frozen=True)
class Ending:
    form: str
    type: str
    monosyllabic: bool = False

    @property
    def inflectional(self) -> bool:
        return self.type != "derivational"


@dataclass(frozen=True)
class AffixTables:
    prefixes: tuple[Prefix, ...]
    misspelt_prefixes: tuple[tuple[str, str], ...]
    endings: tuple[Ending, ...]
    stem_endings: tuple[str, ...]
    correspondences: dict

    def endings_of_type(self, *types: str) -> list[Ending]:
        return [e for e in self.endings if e.type in types]


@dataclass(frozen=True)
class VerbSuffix:
    form: str
    conjugation: str
    slot: str


def _read(name: str, path: str | Path | None):
    if path is not None:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    return json.loads(resources.files("confabga.data").joinpath(name).read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def affix_tables(path: str | None = None) -> AffixTables:
    raw = _read("noun_affixes.json", path)
    return AffixTables(
        prefixes=tuple(Prefix(p["form"], p["kind"], p["lenites"]) for p in raw["prefixes"]),
        misspelt_prefixes=tuple((p["form"], p["expected"]) for p in raw["misspelt_prefixes"]),
        endings=tuple(Ending(e["form"], e["type"], e.get("monosyllabic", False)) for e in raw["endings"]),
        stem_endings=tuple(raw["stem_endings"]),
        correspondences=raw["correspondences"],
    )


@lru_cache(maxsize=None)
def verb_suffixes(path: str | None = None) -> tuple[VerbSuffix, ...]:
    raw = _read("verb_suffixes.json", path)
    return tuple(VerbSuffix(s["form"], s["conjugation"], s["slot"]) for s in raw["suffixes"])

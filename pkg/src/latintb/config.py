"""Tool configuration: one JSON document overriding pinned defaults.

Flags override config, config overrides defaults. The resolved document
is hashed so every report can name the exact configuration it was
produced under.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .dedup import DEFAULT_MIN_CHARS, DEFAULT_MIN_TOKENS
from .lasla import DEFAULT_LASLA_MAPPING, ColumnMapping
from .splits import DEFAULT_DEV_FRACTION, DEFAULT_MIN_TEST
from .standardize import DEFAULT_LEGALITY_RULES, TenseAspectTable


class ConfigError(ValueError):
    pass


@dataclass(slots=True)
class ToolConfig:
    dedup_min_chars: int = DEFAULT_MIN_CHARS
    dedup_min_tokens: int = DEFAULT_MIN_TOKENS
    dev_fraction: float = DEFAULT_DEV_FRACTION
    min_test_sentences: int = DEFAULT_MIN_TEST
    atomicity_exceptions: tuple[str, ...] = ()
    iri_window: int | str = "sentence"
    pronoun_person_repair: bool = False
    include_upos_in_string: bool = False
    legality_rules: tuple[str, ...] = DEFAULT_LEGALITY_RULES
    lasla_mapping: ColumnMapping = field(default_factory=lambda: DEFAULT_LASLA_MAPPING)
    tense_table: TenseAspectTable = field(default_factory=TenseAspectTable.default)
    config_hash: str = "default"

    @classmethod
    def load(cls, path: str | Path | None) -> "ToolConfig":
        if path is None:
            return cls()
        raw = Path(path).read_text(encoding="utf-8")
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path}: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict) -> "ToolConfig":
        known = {
            "dedup_min_chars", "dedup_min_tokens", "dev_fraction",
            "min_test_sentences", "atomicity_exceptions", "iri_window",
            "pronoun_person_repair", "include_upos_in_string",
            "legality_rules", "lasla_mapping", "tense_table",
        }
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        config = cls()
        try:
            if "dedup_min_chars" in data:
                config.dedup_min_chars = int(data["dedup_min_chars"])
            if "dedup_min_tokens" in data:
                config.dedup_min_tokens = int(data["dedup_min_tokens"])
            if "dev_fraction" in data:
                config.dev_fraction = float(data["dev_fraction"])
            if "min_test_sentences" in data:
                config.min_test_sentences = int(data["min_test_sentences"])
            if "atomicity_exceptions" in data:
                config.atomicity_exceptions = tuple(data["atomicity_exceptions"])
            if "iri_window" in data:
                window = data["iri_window"]
                config.iri_window = window if window == "sentence" else int(window)
            if "pronoun_person_repair" in data:
                config.pronoun_person_repair = bool(data["pronoun_person_repair"])
            if "include_upos_in_string" in data:
                config.include_upos_in_string = bool(data["include_upos_in_string"])
            if "legality_rules" in data:
                config.legality_rules = tuple(data["legality_rules"])
            if "lasla_mapping" in data:
                config.lasla_mapping = ColumnMapping.from_dict(data["lasla_mapping"])
            if "tense_table" in data:
                config.tense_table = TenseAspectTable.from_overrides(data["tense_table"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        canonical = json.dumps(data, sort_keys=True, separators=(",", ":"))
        config.config_hash = hashlib.sha256(canonical.encode()).hexdigest()[:12]
        return config

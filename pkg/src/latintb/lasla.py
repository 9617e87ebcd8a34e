"""Ingest LASLA-format treebank exports into the internal sentence model.

The file layout is configuration, not code: a ColumnMapping names the
source column of each mandatory field and carries per-feature rename
tables, so columnar variants only need a different mapping document.
"""

from __future__ import annotations

import io
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

from .conllu import (
    UPOS_TAGS,
    FeatureBundle,
    ParseError,
    Sentence,
    Token,
)


class MappingError(ValueError):
    """Invalid or incomplete column mapping."""


MANDATORY_FIELDS = ("form", "lemma", "upos", "feats")


@dataclass(frozen=True, slots=True)
class ColumnMapping:
    """Where each internal field lives in the source rows.

    Column indices are 0-based. ``feature_renames`` maps source feature
    names to internal ones; ``value_renames`` maps, per internal feature
    name, source values to internal values. ``known_values`` (optional)
    lists the expected value inventory per feature; values outside it
    are passed through but counted as warnings.
    """

    columns: dict[str, int] = field(
        default_factory=lambda: {
            "id": 0, "form": 1, "lemma": 2, "upos": 3, "xpos": 4, "feats": 5,
        }
    )
    n_columns: int = 10
    separator: str = "\t"
    feature_renames: dict[str, str] = field(default_factory=dict)
    value_renames: dict[str, dict[str, str]] = field(default_factory=dict)
    known_values: dict[str, frozenset[str]] | None = None

    def __post_init__(self) -> None:
        for name in MANDATORY_FIELDS:
            if name not in self.columns:
                raise MappingError(f"mandatory field {name!r} has no column assignment")
        for feature, renames in self.value_renames.items():
            targets = list(renames.values())
            if len(targets) != len(set(targets)):
                raise MappingError(f"value renames for {feature!r} are not injective")
        targets = list(self.feature_renames.values())
        if len(targets) != len(set(targets)):
            raise MappingError("feature renames are not injective")

    @classmethod
    def from_dict(cls, data: dict) -> "ColumnMapping":
        kwargs = dict(data)
        if "known_values" in kwargs and kwargs["known_values"] is not None:
            kwargs["known_values"] = {
                feature: frozenset(values)
                for feature, values in kwargs["known_values"].items()
            }
        if "columns" in kwargs:
            kwargs["columns"] = {k: int(v) for k, v in kwargs["columns"].items()}
        return cls(**kwargs)


# LASLA's CoNLL-U-like export: standard columns, "Plural" spelled out,
# no dependency relations. The known-value inventory covers the features
# the conversion consumes; values outside it are counted as warnings.
DEFAULT_LASLA_MAPPING = ColumnMapping(
    value_renames={"Number": {"Plural": "Plur"}},
    known_values={
        "Aspect": frozenset({"Imp", "Perf", "Prosp"}),
        "Case": frozenset({"Nom", "Gen", "Dat", "Acc", "Abl", "Voc", "Loc"}),
        "Degree": frozenset({"Abs", "Cmp", "Pos"}),
        "Gender": frozenset({"Masc", "Fem", "Neut"}),
        "Mood": frozenset({"Ind", "Sub", "Imp"}),
        "Number": frozenset({"Sing", "Plur"}),
        "Person": frozenset({"1", "2", "3"}),
        "Tense": frozenset({"Pres", "Past", "Fut", "Pqp"}),
        "Voice": frozenset({"Act", "Pass"}),
        "VerbForm": frozenset({"Fin", "Inf", "Part", "Ger", "Gdv", "Sup"}),
    },
)


@dataclass(slots=True)
class IngestResult:
    sentences: list[Sentence]
    # (feature, value) -> occurrences outside the declared inventory
    unknown_values: Counter = field(default_factory=Counter)


def _mapped_feats(
    raw: str,
    mapping: ColumnMapping,
    unknown: Counter,
) -> FeatureBundle:
    if raw in ("", "_"):
        return FeatureBundle()
    entries = []
    for item in raw.split("|"):
        if "=" not in item:
            raise ValueError(f"feature item without '=': {item!r}")
        name, values = item.split("=", 1)
        name = mapping.feature_renames.get(name, name)
        renames = mapping.value_renames.get(name, {})
        mapped = tuple(renames.get(v, v) for v in values.split(","))
        if mapping.known_values is not None and name in mapping.known_values:
            inventory = mapping.known_values[name]
            for value in mapped:
                if value not in inventory:
                    unknown[(name, value)] += 1
        entries.append((name, mapped))
    return FeatureBundle(entries)


def ingest_lasla(
    source: str | TextIO,
    mapping: ColumnMapping = DEFAULT_LASLA_MAPPING,
    *,
    work_id: str | None = None,
    upos_inventory: frozenset[str] = UPOS_TAGS,
) -> IngestResult:
    """Parse one LASLA file into sentences carrying ``work_id`` provenance.

    Never invents values: every output value is a source value or its
    configured rename. Unknown values are counted, not dropped.
    """
    if isinstance(source, str):
        source = io.StringIO(source)

    result = IngestResult(sentences=[])
    comments: list[str] = []
    tokens: list[Token] = []
    sent_id: str | None = None
    sent_work: str | None = None

    def flush(line_no: int) -> None:
        nonlocal comments, tokens, sent_id, sent_work
        if not tokens and not comments:
            return
        if not tokens:
            raise ParseError(f"line {line_no}: sentence block without token lines")
        sid = sent_id or f"{work_id or 'lasla'}-{len(result.sentences) + 1}"
        result.sentences.append(
            Sentence(
                sent_id=sid,
                tokens=tuple(tokens),
                work_id=sent_work or work_id,
                comments=tuple(comments),
            )
        )
        comments, tokens = [], []
        sent_id = sent_work = None

    line_no = 0
    for line_no, raw in enumerate(source, start=1):
        line = raw.rstrip("\n")
        if line == "":
            flush(line_no)
            continue
        if line.startswith("#"):
            comments.append(line)
            body = line[1:].strip()
            if "=" in body:
                key, value = body.split("=", 1)
                key, value = key.strip(), value.strip()
                if key == "sent_id":
                    sent_id = value
                elif key in ("work_id", "newdoc id"):
                    sent_work = value
            continue

        cols = line.split(mapping.separator)
        if len(cols) != mapping.n_columns:
            raise ParseError(
                f"line {line_no} (sentence {sent_id!r}): expected "
                f"{mapping.n_columns} columns, got {len(cols)}"
            )

        def col(name: str) -> str | None:
            index = mapping.columns.get(name)
            return cols[index] if index is not None else None

        upos = col("upos") or "_"
        if upos != "_" and upos not in upos_inventory:
            raise ParseError(
                f"line {line_no} (sentence {sent_id!r}): unknown UPOS {upos!r}"
            )
        try:
            feats = _mapped_feats(col("feats") or "_", mapping, result.unknown_values)
            raw_id = col("id")
            xpos = col("xpos")
            tokens.append(
                Token(
                    id=int(raw_id) if raw_id not in (None, "_") else len(tokens) + 1,
                    form=col("form") or "_",
                    lemma=col("lemma") or "_",
                    upos=upos,
                    xpos=None if xpos in (None, "_") else xpos,
                    feats=feats,
                )
            )
        except ValueError as exc:
            raise ParseError(f"line {line_no} (sentence {sent_id!r}): {exc}") from exc

    flush(line_no)
    return result


def ingest_lasla_file(
    path: str | Path,
    mapping: ColumnMapping = DEFAULT_LASLA_MAPPING,
    **kwargs,
) -> IngestResult:
    path = Path(path)
    with open(path, encoding="utf-8") as handle:
        kwargs.setdefault("work_id", path.stem)
        return ingest_lasla(handle, mapping, **kwargs)

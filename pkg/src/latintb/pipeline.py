"""Corpus-level plumbing shared by the CLI subcommands.

Conversion runs standardization and harmonization in one pass and
rewrites each token's FEATS to the standard 9-feature scheme; consumed
TraditionalTense/TraditionalMood MISC keys are dropped, everything else
passes through untouched.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

from .config import ToolConfig
from .conllu import Sentence, Token, parse_conllu_file
from .dedup import align_tokens
from .agreement import AlignedTokenPair
from .harmonize import harmonize_sentence
from .lasla import ingest_lasla_file
from .normalize import matching_key
from .standardize import StandardRecord, standardize_lasla, standardize_ud

_CONSUMED_MISC_KEYS = ("TraditionalTense", "TraditionalMood")


def corpus_files(path: str | Path) -> list[Path]:
    path = Path(path)
    if path.is_dir():
        return sorted(p for p in path.iterdir() if p.suffix == ".conllu")
    return [path]


def load_corpus(
    path: str | Path,
    flavor: str,
    config: ToolConfig | None = None,
    *,
    jobs: int = 1,
) -> tuple[list[Sentence], Counter]:
    """Read a file or a directory of .conllu files, in sorted file order."""
    config = config or ToolConfig()
    files = corpus_files(path)
    unknown: Counter = Counter()

    def read(file: Path) -> list[Sentence]:
        if flavor == "lasla":
            result = ingest_lasla_file(file, config.lasla_mapping)
            unknown.update(result.unknown_values)
            return result.sentences
        return parse_conllu_file(file)

    if jobs > 1 and len(files) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(read, files))
    else:
        batches = [read(file) for file in files]
    sentences: list[Sentence] = []
    for batch in batches:
        sentences.extend(batch)
    return sentences, unknown


@dataclass(slots=True)
class ConversionResult:
    sentences: list[Sentence]
    records: list[list[StandardRecord]]
    audit: Counter = field(default_factory=Counter)
    anomalies: list[tuple[str, int, str]] = field(default_factory=list)


def standardize_sentence(
    sentence: Sentence, flavor: str, config: ToolConfig
) -> list[StandardRecord]:
    if flavor == "ud":
        return [
            standardize_ud(t, tense_table=config.tense_table) for t in sentence.tokens
        ]
    if flavor == "lasla":
        return [
            standardize_lasla(t, tense_table=config.tense_table)
            for t in sentence.tokens
        ]
    raise ValueError(f"unknown flavor {flavor!r}")


def _standard_token(token: Token, record: StandardRecord) -> Token:
    misc = tuple(
        (key, value) for key, value in token.misc if key not in _CONSUMED_MISC_KEYS
    )
    return replace(
        token,
        upos=record.upos,
        feats=record.to_feature_bundle(),
        misc=misc,
    )


def sentence_with_records(
    sentence: Sentence, records: Sequence[StandardRecord]
) -> Sentence:
    tokens = tuple(
        _standard_token(token, record)
        for token, record in zip(sentence.tokens, records)
    )
    return replace(sentence, tokens=tokens)


def convert_corpus(
    sentences: Sequence[Sentence],
    flavor: str,
    config: ToolConfig | None = None,
) -> ConversionResult:
    """Standardize then harmonize every sentence; collect rule audit
    counts and per-token anomaly codes along the way."""
    config = config or ToolConfig()
    result = ConversionResult(sentences=[], records=[])
    for sentence in sentences:
        records = standardize_sentence(sentence, flavor, config)
        records = harmonize_sentence(
            sentence,
            records,
            audit=result.audit,
            iri_window=config.iri_window,
            pronoun_person_repair=config.pronoun_person_repair,
        )
        for token, record in zip(sentence.tokens, records):
            for code in record.anomalies:
                result.anomalies.append((sentence.sent_id, token.id, code))
        result.records.append(records)
        result.sentences.append(sentence_with_records(sentence, records))
    return result


def aligned_pairs(
    manifest_rows: Sequence[tuple[str, str, str, int]],
    corpus_a: Sequence[Sentence],
    corpus_b: Sequence[Sentence],
    records_a: Sequence[Sequence[StandardRecord]] | None = None,
    records_b: Sequence[Sequence[StandardRecord]] | None = None,
) -> list[AlignedTokenPair]:
    """Re-align the duplicate pairs named by a manifest and attach the
    converted records when provided."""
    by_id_a = {s.sent_id: i for i, s in enumerate(corpus_a)}
    by_id_b = {s.sent_id: i for i, s in enumerate(corpus_b)}
    pairs: list[AlignedTokenPair] = []
    for sent_a, sent_b, _basis, _length in manifest_rows:
        if sent_a not in by_id_a or sent_b not in by_id_b:
            raise KeyError(f"manifest pair ({sent_a!r}, {sent_b!r}) not found in corpora")
        pos_a, pos_b = by_id_a[sent_a], by_id_b[sent_b]
        norm_a = matching_key(corpus_a[pos_a])
        norm_b = matching_key(corpus_b[pos_b])
        for i, j in align_tokens(norm_a.forms, norm_b.forms):
            token_index_a = norm_a.token_indices[i]
            token_index_b = norm_b.token_indices[j]
            pairs.append(
                AlignedTokenPair(
                    token_a=corpus_a[pos_a].tokens[token_index_a],
                    token_b=corpus_b[pos_b].tokens[token_index_b],
                    record_a=records_a[pos_a][token_index_a] if records_a else None,
                    record_b=records_b[pos_b][token_index_b] if records_b else None,
                )
            )
    return pairs

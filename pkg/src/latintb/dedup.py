"""Cross-corpus duplicate-sentence detection and token alignment.

Candidates share a normalized character- or token-level prefix or suffix
of at least the configured length; each candidate is confirmed by the
longest-common-substring token alignment, and a greedy pass keeps at
most one partner per sentence.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .conllu import Sentence
from .metadata import TextMetadata
from .normalize import NormalizedSentence, matching_key

BASIS_CHAR_PREFIX = "char-prefix"
BASIS_CHAR_SUFFIX = "char-suffix"
BASIS_TOKEN_PREFIX = "token-prefix"
BASIS_TOKEN_SUFFIX = "token-suffix"

DEFAULT_MIN_CHARS = 20
DEFAULT_MIN_TOKENS = 5


@dataclass(frozen=True, slots=True)
class DuplicatePair:
    """One matched sentence pair with its contiguous token alignment.

    Alignment indices point into the original token lists of each
    sentence (punctuation included), not the normalized views.
    """

    sent_a: str
    sent_b: str
    work_a: str | None
    work_b: str | None
    basis: str
    alignment: tuple[tuple[int, int], ...]


def align_tokens(
    forms_a: Sequence[str], forms_b: Sequence[str]
) -> list[tuple[int, int]]:
    """Longest common contiguous run of exactly equal forms.

    Ties go to the earliest start in ``forms_a``, then in ``forms_b``.
    O(len_a * len_b) dynamic program over run lengths.
    """
    if not forms_a or not forms_b:
        return []
    best_len = 0
    best_end_a = best_end_b = -1
    previous = [0] * (len(forms_b) + 1)
    for i, form_a in enumerate(forms_a):
        current = [0] * (len(forms_b) + 1)
        for j, form_b in enumerate(forms_b):
            if form_a == form_b:
                run = previous[j] + 1
                current[j + 1] = run
                if run > best_len:
                    best_len = run
                    best_end_a, best_end_b = i, j
        previous = current
    if best_len == 0:
        return []
    start_a = best_end_a - best_len + 1
    start_b = best_end_b - best_len + 1
    return [(start_a + k, start_b + k) for k in range(best_len)]


def _candidate_keys(
    norm: NormalizedSentence, min_chars: int, min_tokens: int
) -> list[tuple[str, object]]:
    keys: list[tuple[str, object]] = []
    if len(norm.char_key) >= min_chars:
        keys.append((BASIS_CHAR_PREFIX, norm.char_key[:min_chars]))
        keys.append((BASIS_CHAR_SUFFIX, norm.char_key[-min_chars:]))
    if len(norm.forms) >= min_tokens:
        keys.append((BASIS_TOKEN_PREFIX, norm.forms[:min_tokens]))
        keys.append((BASIS_TOKEN_SUFFIX, norm.forms[-min_tokens:]))
    return keys


def find_duplicates(
    corpus_a: Sequence[Sentence],
    corpus_b: Sequence[Sentence],
    *,
    min_chars: int = DEFAULT_MIN_CHARS,
    min_tokens: int = DEFAULT_MIN_TOKENS,
) -> list[DuplicatePair]:
    """Detect duplicate sentences across two corpora.

    Either threshold admits a candidate. Greedy best-match keeps one
    partner per sentence, preferring longer alignments, then the
    lexicographically smaller id pair, making the result deterministic
    and symmetric in corpus order.
    """
    norms_a = [matching_key(s) for s in corpus_a]
    norms_b = [matching_key(s) for s in corpus_b]

    index: dict[tuple[str, object], list[int]] = defaultdict(list)
    for b_pos, norm in enumerate(norms_b):
        for key in _candidate_keys(norm, min_chars, min_tokens):
            index[key].append(b_pos)

    bases = (BASIS_CHAR_PREFIX, BASIS_CHAR_SUFFIX, BASIS_TOKEN_PREFIX, BASIS_TOKEN_SUFFIX)
    candidates: dict[tuple[int, int], str] = {}
    for a_pos, norm in enumerate(norms_a):
        keyed = dict()
        for basis, key in _candidate_keys(norm, min_chars, min_tokens):
            keyed[basis] = key
        for basis in bases:
            if basis not in keyed:
                continue
            for b_pos in index.get((basis, keyed[basis]), ()):
                candidates.setdefault((a_pos, b_pos), basis)

    scored = []
    for (a_pos, b_pos), basis in candidates.items():
        norm_a, norm_b = norms_a[a_pos], norms_b[b_pos]
        aligned = align_tokens(norm_a.forms, norm_b.forms)
        if not aligned:
            continue
        id_a, id_b = norm_a.sent_id, norm_b.sent_id
        tie = tuple(sorted((id_a, id_b))) + (id_a,)
        scored.append((-len(aligned), tie, a_pos, b_pos, basis, aligned))

    scored.sort(key=lambda item: item[:2])
    used_a: set[int] = set()
    used_b: set[int] = set()
    pairs: list[DuplicatePair] = []
    for _neg_len, _tie, a_pos, b_pos, basis, aligned in scored:
        if a_pos in used_a or b_pos in used_b:
            continue
        used_a.add(a_pos)
        used_b.add(b_pos)
        norm_a, norm_b = norms_a[a_pos], norms_b[b_pos]
        alignment = tuple(
            (norm_a.token_indices[i], norm_b.token_indices[j]) for i, j in aligned
        )
        pairs.append(
            DuplicatePair(
                sent_a=norm_a.sent_id,
                sent_b=norm_b.sent_id,
                work_a=corpus_a[a_pos].work_id,
                work_b=corpus_b[b_pos].work_id,
                basis=basis,
                alignment=alignment,
            )
        )
    pairs.sort(key=lambda p: (p.sent_a, p.sent_b))
    return pairs


def duplicate_report(
    pairs: Sequence[DuplicatePair],
    metadata: Mapping[str, TextMetadata] | None = None,
) -> list[tuple[str, str, int]]:
    """Per-work duplicate counts as (author, work, count) rows."""
    counts: dict[str, int] = defaultdict(int)
    for pair in pairs:
        work = pair.work_a or pair.work_b or "?"
        counts[work] += 1
    rows = []
    for work in sorted(counts):
        author = ""
        if metadata is not None and work in metadata:
            author = metadata[work].author
        rows.append((author, work, counts[work]))
    rows.sort(key=lambda r: (r[0], r[1]))
    return rows


def write_manifest(path: str | Path, pairs: Sequence[DuplicatePair], *, footer: str | None = None) -> None:
    lines = ["sent_a\tsent_b\tbasis\talign_length"]
    for pair in pairs:
        lines.append(f"{pair.sent_a}\t{pair.sent_b}\t{pair.basis}\t{len(pair.alignment)}")
    if footer:
        lines.append(footer)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_manifest(path: str | Path) -> list[tuple[str, str, str, int]]:
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#") or line.startswith("sent_a\t"):
            continue
        sent_a, sent_b, basis, length = line.split("\t")
        rows.append((sent_a, sent_b, basis, int(length)))
    return rows

"""A deliberately simple suffix-rule tagger used to exercise the scorer.

Not a serious model: it exists so the evaluation harness has a shipped,
deterministic prediction source whose scores the test suite can verify
against brute-force oracles.
"""

from __future__ import annotations

from typing import Sequence

from .conllu import Sentence
from .normalize import is_punctuation_token, normalize_form
from .standardize import StandardRecord

_CLOSED_CLASS = {
    "et": "CCONJ", "atque": "CCONJ", "sed": "CCONJ", "aut": "CCONJ",
    "in": "ADP", "ad": "ADP", "cum": "ADP", "de": "ADP", "ex": "ADP", "ab": "ADP",
    "non": "PART", "ne": "PART",
    "ut": "SCONJ", "si": "SCONJ", "quod": "SCONJ",
    "qui": "PRON", "quae": "PRON", "hic": "PRON", "ille": "PRON", "is": "PRON",
}


def predict_token(form: str) -> StandardRecord:
    word = normalize_form(form)
    if word in _CLOSED_CLASS:
        upos = _CLOSED_CLASS[word]
        if upos == "PRON":
            return StandardRecord(upos="PRON", case="Nom", number="Sing")
        return StandardRecord(upos=upos)
    if word.endswith("que"):
        return StandardRecord(upos="CCONJ")
    if word.endswith("nt"):
        return StandardRecord(
            upos="VERB", person="3", number="Plur", tense="Pres", mood="Ind", voice="Act"
        )
    if word.endswith("ntur"):
        return StandardRecord(
            upos="VERB", person="3", number="Plur", tense="Pres", mood="Ind", voice="Pass"
        )
    if word.endswith("tur"):
        return StandardRecord(
            upos="VERB", person="3", number="Sing", tense="Pres", mood="Ind", voice="Pass"
        )
    if word.endswith("re"):
        return StandardRecord(upos="VERB", tense="Pres", mood="Inf", voice="Act")
    if word.endswith("t"):
        return StandardRecord(
            upos="VERB", person="3", number="Sing", tense="Pres", mood="Ind", voice="Act"
        )
    if word.endswith("orum") or word.endswith("arum"):
        return StandardRecord(upos="NOUN", case="Gen", number="Plur", gender=("Masc",))
    if word.endswith("is"):
        return StandardRecord(upos="NOUN", case="Abl", number="Plur", gender=("Masc",))
    if word.endswith("am"):
        return StandardRecord(upos="NOUN", case="Acc", number="Sing", gender=("Fem",))
    if word.endswith("um"):
        return StandardRecord(upos="NOUN", case="Acc", number="Sing", gender=("Masc",))
    if word.endswith("us"):
        return StandardRecord(upos="NOUN", case="Nom", number="Sing", gender=("Masc",))
    if word.endswith("ae"):
        return StandardRecord(upos="NOUN", case="Gen", number="Sing", gender=("Fem",))
    if word.endswith("a"):
        return StandardRecord(upos="NOUN", case="Nom", number="Sing", gender=("Fem",))
    if word.endswith("e"):
        return StandardRecord(upos="ADV")
    return StandardRecord(upos="NOUN")


def predict_sentence(sentence: Sentence) -> list[StandardRecord]:
    records = []
    for token in sentence.tokens:
        if is_punctuation_token(token):
            records.append(StandardRecord(upos="PUNCT"))
        else:
            records.append(predict_token(token.form))
    return records


def predict_corpus(sentences: Sequence[Sentence]) -> list[list[StandardRecord]]:
    return [predict_sentence(s) for s in sentences]

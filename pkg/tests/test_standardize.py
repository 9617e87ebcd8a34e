import itertools

import pytest
from hypothesis import given, strategies as st

from latintb.conllu import FeatureBundle, Token
from latintb.standardize import (
    ANOMALY_MOOD_CONFLICT,
    ANOMALY_TRAD_ON_NONVERB,
    CASES,
    DEGREES,
    GENDERS,
    MOODS,
    NUMBERS,
    PERSONS,
    RULE_PRON_MISSING,
    RULE_SCONJ_NOMINAL,
    RULE_TENSE_NO_MOOD,
    TENSES,
    UD_ASPECTS,
    UD_TENSES,
    VOICES,
    LINT_ESSE_AS_NOUN,
    StandardRecord,
    TenseAspectTable,
    legality_check,
    lint_token,
    record_from_standard_feats,
    standardize_lasla,
    standardize_ud,
)

TABLE = TenseAspectTable.default()


def make_token(feats=None, upos="VERB", misc=(), form="amat", lemma="amo"):
    return Token(
        id=1,
        form=form,
        lemma=lemma,
        upos=upos,
        feats=FeatureBundle.from_dict(feats or {}),
        misc=tuple(misc),
    )


def test_table_exhaustive_over_cross_product():
    for tense, aspect in itertools.product((None,) + UD_TENSES, (None,) + UD_ASPECTS):
        result = TABLE.lookup(tense, aspect)
        assert result is None or result in TENSES


@pytest.mark.parametrize(
    "tense,aspect,expected",
    [
        ("Fut", "Perf", "FutP"),
        ("Past", "Imp", "Imp"),
        ("Past", "Perf", "Perf"),
        ("Past", None, "Perf"),
        ("Past", "Inch", "Perf"),
        ("Pres", "Perf", "Pres"),
        ("Pres", None, "Pres"),
        ("Pqp", "Imp", "Pqp"),
        ("Fut", "Prosp", "Fut"),
        (None, "Perf", None),
    ],
)
def test_table_values(tense, aspect, expected):
    assert TABLE.lookup(tense, aspect) == expected


def test_table_rejects_incomplete():
    with pytest.raises(ValueError, match="not exhaustive"):
        TenseAspectTable({})


def test_table_override():
    table = TenseAspectTable.from_overrides({"Past,Prosp": "Fut"})
    assert table.lookup("Past", "Prosp") == "Fut"
    assert table.lookup("Past", "Imp") == "Imp"


def test_ud_future_perfect_from_aspect():
    token = make_token(
        {"Tense": "Fut", "Aspect": "Perf", "Mood": "Ind", "Voice": "Act",
         "Person": "3", "Number": "Sing"},
        misc=[("TraditionalTense", "Fut"), ("TraditionalMood", "Ind")],
    )
    record = standardize_ud(token)
    assert record.tense == "FutP"
    assert record.mood == "Ind"
    assert record.voice == "Act"
    assert record.person == "3"
    assert record.number == "Sing"


def test_ud_future_perfect_without_traditional_field():
    token = make_token({"Tense": "Fut", "Aspect": "Perf", "Mood": "Ind"})
    assert standardize_ud(token).tense == "FutP"


def test_ud_infinitive_tense_from_aspect():
    token = make_token({"VerbForm": "Inf", "Aspect": "Perf", "Voice": "Act"})
    record = standardize_ud(token)
    assert record.mood == "Inf"
    assert record.tense == "Perf"

    token = make_token({"VerbForm": "Inf", "Aspect": "Imp", "Voice": "Act"})
    record = standardize_ud(token)
    assert record.tense == "Pres"

    token = make_token({"VerbForm": "Inf", "Aspect": "Prosp"})
    assert standardize_ud(token).tense == "Fut"


def test_ud_noun_copies_nominal_features():
    token = make_token({"Case": "Abl", "Gender": "Fem", "Number": "Sing"}, upos="NOUN")
    record = standardize_ud(token)
    assert record.upos == "NOUN"
    assert record.case == "Abl"
    assert record.gender == ("Fem",)
    assert record.number == "Sing"
    assert record.tense is None and record.mood is None and record.voice is None
    assert record.person is None and record.degree is None


def test_ud_traditional_mood_wins():
    token = make_token(
        {"VerbForm": "Part", "Case": "Nom", "Gender": "Masc", "Number": "Sing"},
        misc=[("TraditionalMood", "Gdv")],
    )
    assert standardize_ud(token).mood == "Gdv"


def test_traditional_field_on_non_verb_flags_anomaly():
    token = make_token(
        {"Case": "Nom"}, upos="NOUN", misc=[("TraditionalMood", "Ind")]
    )
    record = standardize_ud(token)
    assert ANOMALY_TRAD_ON_NONVERB in record.anomalies
    assert record.mood is None and record.tense is None and record.voice is None
    assert record.case == "Nom"


def test_degree_pos_and_dim_collapse():
    for value in ("Pos", "Dim"):
        token = make_token({"Degree": value}, upos="ADJ")
        assert standardize_ud(token).degree is None
    token = make_token({"Degree": "Cmp"}, upos="ADJ")
    assert standardize_ud(token).degree == "Cmp"


def test_lasla_tense_aspect_lookup():
    token = make_token({"Tense": "Past", "Aspect": "Imp", "Mood": "Ind"})
    record = standardize_lasla(token)
    assert record.tense == "Imp"
    assert record.mood == "Ind"


def test_lasla_gerundive_routing():
    token = make_token({"VerbForm": "Gdv", "Case": "Acc", "Gender": "Neut", "Number": "Plur"})
    record = standardize_lasla(token)
    assert record.mood == "Gdv"
    assert record.case == "Acc"
    assert record.gender == ("Neut",)
    assert record.number == "Plur"


def test_lasla_degree_pos_collapses():
    token = make_token({"Degree": "Pos"}, upos="ADJ")
    assert standardize_lasla(token).degree is None


def test_lasla_multi_value_gender_preserved():
    token = make_token({"Gender": ["Fem", "Masc", "Neut"], "Case": "Nom"}, upos="NOUN")
    assert standardize_lasla(token).gender == ("Fem", "Masc", "Neut")


def test_lasla_mood_conflict_prefers_finite():
    token = make_token({"Mood": "Ind", "VerbForm": "Ger"})
    record = standardize_lasla(token)
    assert record.mood == "Ind"
    assert ANOMALY_MOOD_CONFLICT in record.anomalies


def test_standardize_idempotent_on_reencoded_records(converted_ud):
    for sentence, records in zip(converted_ud.sentences, converted_ud.records):
        for token, record in zip(sentence.tokens, records):
            again_ud = standardize_ud(token)
            again_lasla = standardize_lasla(token)
            for again in (again_ud, again_lasla):
                assert again.upos == record.upos
                assert again.tense == record.tense
                assert again.mood == record.mood
                assert again.voice == record.voice
                assert again.case == record.case
                assert again.gender == record.gender
                assert again.degree == record.degree
                assert again.person == record.person
                assert again.number == record.number


def test_record_from_standard_feats_strict():
    token = make_token({"Tense": "Perf", "Mood": "Ind", "Voice": "Act"})
    record = record_from_standard_feats(token)
    assert record.tense == "Perf"
    with pytest.raises(ValueError, match="non-standard feature"):
        record_from_standard_feats(make_token({"Aspect": "Imp"}))
    with pytest.raises(ValueError):
        record_from_standard_feats(make_token({"Tense": "Past"}))


_any_value = st.sampled_from(
    ["Pres", "Past", "Fut", "Pqp", "Imp", "Perf", "Prosp", "Inch", "Ind", "Sub",
     "Fin", "Inf", "Part", "Ger", "Gdv", "Sup", "Vnoun", "Act", "Pass", "Masc",
     "Fem", "Neut", "Nom", "Acc", "Abl", "Sing", "Plur", "Plural", "1", "3",
     "Pos", "Dim", "Cmp", "Abs", "Junk", "Weird"]
)
_fuzz_feats = st.dictionaries(
    st.sampled_from(
        ["Tense", "Aspect", "Mood", "VerbForm", "Voice", "Gender", "Case",
         "Number", "Person", "Degree", "PronType", "InflClass"]
    ),
    st.lists(_any_value, min_size=1, max_size=2, unique=True),
    max_size=6,
)


@given(_fuzz_feats, st.sampled_from(["VERB", "NOUN", "ADJ", "AUX", "PRON", "SCONJ"]))
def test_outputs_stay_in_inventories_under_fuzz(feats, upos):
    token = make_token(feats, upos=upos)
    for record in (standardize_ud(token), standardize_lasla(token)):
        assert record.tense in (None,) + TENSES
        assert record.mood in (None,) + MOODS
        assert record.voice in (None,) + VOICES
        assert record.case in (None,) + CASES
        assert record.degree in (None,) + DEGREES
        assert record.person in (None,) + PERSONS
        assert record.number in (None,) + NUMBERS
        assert all(g in GENDERS for g in record.gender)


def test_legality_sconj_with_nominal_feats():
    record = StandardRecord(upos="SCONJ", gender=("Neut",), number="Sing")
    assert legality_check(record) == [RULE_SCONJ_NOMINAL]


def test_legality_pron_missing_feats():
    record = StandardRecord(upos="PRON")
    assert legality_check(record) == [RULE_PRON_MISSING]


def test_legality_clean_particle():
    assert legality_check(StandardRecord(upos="PART")) == []


def test_legality_tense_without_mood():
    record = StandardRecord(upos="VERB", tense="Pres")
    assert legality_check(record) == [RULE_TENSE_NO_MOOD]


def test_legality_unknown_rule_is_config_error():
    with pytest.raises(ValueError, match="unknown legality rule"):
        legality_check(StandardRecord(upos="PART"), rules=("NO_SUCH_RULE",))


def test_lint_flags_esse_as_noun():
    token = make_token({}, upos="NOUN", form="esse", lemma="sum")
    record = StandardRecord(upos="NOUN")
    assert LINT_ESSE_AS_NOUN in lint_token(token, record)


def test_morph_string_sorted_alphabetically():
    record = StandardRecord(
        upos="VERB", person="3", number="Sing", tense="Pres", mood="Ind", voice="Act"
    )
    assert record.morph_string() == (
        "Mood=Ind|Number=Sing|Person=3|Tense=Pres|Voice=Act"
    )
    assert record.morph_string(include_upos=True).startswith("UPOS=VERB|")

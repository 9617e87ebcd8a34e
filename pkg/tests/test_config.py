import json

import pytest

from latintb.config import ConfigError, ToolConfig
from latintb.conllu import FeatureBundle, Token
from latintb.lasla import ingest_lasla
from latintb.standardize import standardize_lasla


def test_defaults():
    config = ToolConfig.load(None)
    assert config.dedup_min_chars == 20
    assert config.dedup_min_tokens == 5
    assert config.min_test_sentences == 1000
    assert config.dev_fraction == 0.03
    assert config.config_hash == "default"


def test_load_overrides(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({
        "dedup_min_chars": 12,
        "min_test_sentences": 30,
        "iri_window": 2,
        "lasla_mapping": {
            "columns": {"form": 0, "lemma": 1, "upos": 2, "feats": 3},
            "n_columns": 4,
            "value_renames": {"Number": {"Plural": "Plur"}},
        },
        "tense_table": {"Past,Prosp": "Fut"},
    }))
    config = ToolConfig.load(path)
    assert config.dedup_min_chars == 12
    assert config.min_test_sentences == 30
    assert config.iri_window == 2
    assert config.config_hash != "default"

    result = ingest_lasla("amabat\tamo\tVERB\tNumber=Plural|Tense=Past|Aspect=Prosp\n",
                          config.lasla_mapping, work_id="w")
    token = result.sentences[0].tokens[0]
    assert token.feats.get("Number") == ("Plur",)
    assert standardize_lasla(token, tense_table=config.tense_table).tense == "Fut"


def test_unknown_keys_rejected(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"dedup_min_char": 12}))
    with pytest.raises(ConfigError, match="unknown config keys"):
        ToolConfig.load(path)


def test_malformed_json_rejected(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        ToolConfig.load(path)


def test_hash_stable_for_same_document(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text('{"dedup_min_chars": 9, "dedup_min_tokens": 3}')
    b.write_text('{"dedup_min_tokens": 3, "dedup_min_chars": 9}')
    assert ToolConfig.load(a).config_hash == ToolConfig.load(b).config_hash


def test_tense_table_override_on_standardize():
    config = ToolConfig.from_dict({"tense_table": {"Fut,Imp": "FutP"}})
    token = Token(id=1, form="x", lemma="x", upos="VERB",
                  feats=FeatureBundle.from_dict({"Tense": "Fut", "Aspect": "Imp"}))
    assert standardize_lasla(token, tense_table=config.tense_table).tense == "FutP"


def test_bad_tense_override_rejected():
    with pytest.raises(ConfigError, match="unknown pair"):
        ToolConfig.from_dict({"tense_table": {"Never,Ever": "Fut"}})

import json

import pytest

from latintb.baseline import predict_corpus
from latintb.cli import main
from latintb.conllu import parse_conllu_file, write_conllu_file
from latintb.pipeline import sentence_with_records
from latintb.reports import read_tsv
from latintb.standardize import StandardRecord


@pytest.fixture(scope="module")
def workdir(tmp_path_factory, fixtures_dir):
    """One CLI pipeline run shared by the checks below."""
    root = tmp_path_factory.mktemp("cli")
    ud_in = str(fixtures_dir / "ud")
    lasla_in = str(fixtures_dir / "lasla")
    config = str(fixtures_dir / "config.json")
    meta = str(fixtures_dir / "metadata.tsv")

    assert main(["convert", "--in", ud_in, "--flavor", "ud",
                 "--out", str(root / "std" / "ud")]) == 0
    assert main(["convert", "--in", lasla_in, "--flavor", "lasla",
                 "--out", str(root / "std" / "lasla")]) == 0
    assert main(["dedup", "--a", ud_in, "--b", lasla_in,
                 "--out", str(root / "dups.tsv"),
                 "--report", str(root / "dup_report.tsv"),
                 "--metadata", meta]) == 0
    assert main(["agree", "--a", ud_in, "--b", lasla_in,
                 "--dups", str(root / "dups.tsv"),
                 "--out", str(root / "agreement.tsv")]) == 0
    assert main(["split", "--ud", str(root / "std" / "ud"),
                 "--lasla", str(root / "std" / "lasla"),
                 "--metadata", meta, "--dups", str(root / "dups.tsv"),
                 "--out", str(root / "splits"), "--config", config,
                 "--no-published", "--seed", "7"]) == 0
    return root


def test_convert_outputs_standard_feats(workdir, fixtures_dir):
    converted = parse_conllu_file(workdir / "std" / "ud" / "cl_alpha.conllu")
    allowed = {"Case", "Degree", "Gender", "Mood", "Number", "Person", "Tense", "Voice"}
    for sentence in converted:
        for token in sentence.tokens:
            assert set(token.feats.names()) <= allowed
            assert token.misc_get("TraditionalTense") is None
            assert token.misc_get("TraditionalMood") is None
    audit = read_tsv(workdir / "std" / "ud" / "harmonization_audit.tsv")
    assert any(row[1] == "intj-to-part" for row in audit)


def test_convert_is_byte_deterministic(workdir, fixtures_dir, tmp_path):
    again = tmp_path / "again"
    assert main(["convert", "--in", str(fixtures_dir / "ud"), "--flavor", "ud",
                 "--out", str(again)]) == 0
    for file in sorted((workdir / "std" / "ud").glob("*")):
        assert (again / file.name).read_bytes() == file.read_bytes()


def test_dedup_manifest_and_report(workdir, planted_duplicates):
    rows = read_tsv(workdir / "dups.tsv")
    assert {(r[0], r[1]) for r in rows} == {(a, b) for a, b, _ in planted_duplicates}
    report = {r[1]: r for r in read_tsv(workdir / "dup_report.tsv")}
    assert report["cl_alpha"][0] == "Cicero"


def test_agreement_report_shape(workdir):
    rows = read_tsv(workdir / "agreement.tsv")
    features = {r[0] for r in rows}
    assert {"UPOS", "Case", "Gender", "Gender (loose)", "Mood", "Tense"} <= features
    for row in rows:
        assert len(row) == 7


def test_split_outputs(workdir):
    audit = read_tsv(workdir / "splits" / "split_audit.tsv")
    checks = [r for r in audit if r[2] in ("pass", "FAIL")]
    assert checks and all(r[2] == "pass" for r in checks)
    manifest = json.loads((workdir / "splits" / "Classical-UD.manifest.json").read_text())
    assert set(manifest["train_works"]) & {"cl_alpha", "cl_beta"} == {"cl_alpha", "cl_beta"}
    test_file = workdir / "splits" / "Classical-UD" / "test.conllu"
    assert test_file.exists()
    assert len(parse_conllu_file(test_file)) >= 30


def test_metadata_validate_ok(fixtures_dir, capsys):
    assert main(["metadata-validate", "--file", str(fixtures_dir / "metadata.tsv"),
                 "--corpus", str(fixtures_dir / "ud")]) == 0
    assert "metadata ok" in capsys.readouterr().out


def test_metadata_validate_failure(tmp_path, fixtures_dir):
    bad = tmp_path / "bad.tsv"
    text = (fixtures_dir / "metadata.tsv").read_text().replace(
        "Perseus\tcl_alpha\tCicero\t-1", "Perseus\tcl_alpha\tCicero\t0"
    )
    bad.write_text(text)
    assert main(["metadata-validate", "--file", str(bad)]) == 1


def _write_predictions(gold_path, out_a, out_b):
    gold = parse_conllu_file(gold_path)
    records = predict_corpus(gold)
    write_conllu_file(out_a, [sentence_with_records(s, r) for s, r in zip(gold, records)])
    degraded = [
        [StandardRecord(upos="NOUN") for _ in recs] if i % 3 == 0 else list(recs)
        for i, recs in enumerate(records)
    ]
    write_conllu_file(out_b, [sentence_with_records(s, r) for s, r in zip(gold, degraded)])


def test_eval_and_perm_test(workdir, tmp_path, capsys):
    gold = workdir / "splits" / "Classical-UD" / "test.conllu"
    pred_a = tmp_path / "pred_a.conllu"
    pred_b = tmp_path / "pred_b.conllu"
    _write_predictions(gold, pred_a, pred_b)

    assert main(["eval", "--gold", str(gold), "--pred", str(pred_a),
                 "--out", str(tmp_path / "report.json")]) == 0
    out = capsys.readouterr().out
    assert "whole-string acc" in out
    report = json.loads((tmp_path / "report.json").read_text())
    assert 0.0 <= report["whole_string_accuracy"] <= 1.0
    assert "macro_f1" in report

    assert main(["perm-test", "--gold", str(gold), "--a", str(pred_a),
                 "--b", str(pred_b), "--metric", "morph-acc",
                 "--n", "500", "--seed", "7"]) == 0
    line = capsys.readouterr().out
    assert "p=" in line and "seed=7" in line


def test_perm_test_jobs_deterministic(workdir, tmp_path, capsys):
    gold = workdir / "splits" / "Classical-UD" / "test.conllu"
    pred_a = tmp_path / "a.conllu"
    pred_b = tmp_path / "b.conllu"
    _write_predictions(gold, pred_a, pred_b)
    outputs = []
    for jobs in ("1", "8"):
        assert main(["perm-test", "--gold", str(gold), "--a", str(pred_a),
                     "--b", str(pred_b), "--n", "3000", "--seed", "11",
                     "--jobs", jobs]) == 0
        outputs.append(capsys.readouterr().out.splitlines()[0])
    assert outputs[0] == outputs[1]


def test_eval_misaligned_is_validation_failure(workdir, tmp_path):
    gold = workdir / "splits" / "Classical-UD" / "test.conllu"
    other = workdir / "splits" / "Classical-UD" / "dev.conllu"
    assert main(["eval", "--gold", str(gold), "--pred", str(other)]) == 1


def test_lint_flags_esse_as_noun(fixtures_dir, tmp_path):
    out = tmp_path / "lint.tsv"
    assert main(["lint", "--in", str(fixtures_dir / "ud"), "--flavor", "ud",
                 "--out", str(out)]) == 0
    codes = {row[2] for row in read_tsv(out)}
    assert "ESSE_AS_NOUN" in codes


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_unknown_metric_is_usage_error(workdir, tmp_path):
    gold = workdir / "splits" / "Classical-UD" / "test.conllu"
    assert main(["perm-test", "--gold", str(gold), "--a", str(gold),
                 "--b", str(gold), "--metric", "nonsense"]) == 2


def test_reports_carry_provenance_footer(workdir):
    text = (workdir / "dups.tsv").read_text()
    assert text.rstrip().splitlines()[-1].startswith("# latintb=")

import pytest

from latintb.metadata import (
    PERIOD_BIBLE,
    PERIOD_CLASSICAL,
    PERIOD_POST_CLASSICAL,
    MetadataError,
    PeriodError,
    TextMetadata,
    assign_time_period,
    load_metadata,
    parse_metadata,
    serialize_metadata,
    validate_metadata,
)


def meta(**kwargs):
    defaults = dict(
        treebank="Perseus", work_id="w", author="A", century=-1,
        is_bible=False, genres=frozenset({"speech"}),
        train_sents=10, dev_sents=0, test_sents=0,
    )
    defaults.update(kwargs)
    return TextMetadata(**defaults)


def test_classical_assignment():
    assert assign_time_period(meta(century=-1)) == PERIOD_CLASSICAL
    assert assign_time_period(meta(century=-3)) == PERIOD_CLASSICAL
    assert assign_time_period(meta(century=2)) == PERIOD_CLASSICAL


def test_bible_assignment():
    vulgata = meta(century=4, is_bible=True, genres=frozenset({"Bible", "Christian"}))
    assert assign_time_period(vulgata) == PERIOD_BIBLE


def test_post_classical_assignment():
    assert assign_time_period(meta(century=4)) == PERIOD_POST_CLASSICAL
    assert assign_time_period(meta(century=14)) == PERIOD_POST_CLASSICAL


def test_third_century_is_an_error():
    with pytest.raises(PeriodError, match="3rd-century"):
        assign_time_period(meta(century=3))


def test_valid_fixture_table_has_no_violations(fixtures_dir):
    rows = parse_metadata((fixtures_dir / "metadata.tsv").read_text(encoding="utf-8"))
    assert validate_metadata(rows) == []


def test_duplicate_work_id_flagged():
    rows = [meta(work_id="dup"), meta(work_id="dup")]
    codes = [v.code for v in validate_metadata(rows)]
    assert "duplicate-work" in codes


def test_exclusive_genres_cannot_cooccur():
    rows = [meta(genres=frozenset({"epic", "short poem", "poem"}))]
    codes = [v.code for v in validate_metadata(rows)]
    assert "multiple-exclusive-genres" in codes
    assert "epic-and-short-poem" in codes


def test_bible_genre_requires_christian():
    rows = [meta(genres=frozenset({"Bible"}))]
    codes = [v.code for v in validate_metadata(rows)]
    assert "bible-without-christian" in codes


def test_century_bounds():
    for bad in (0, -4, 15):
        codes = [v.code for v in validate_metadata([meta(century=bad)])]
        assert "century-out-of-range" in codes


def test_unknown_genre_flagged():
    codes = [v.code for v in validate_metadata([meta(genres=frozenset({"novel"}))])]
    assert "unknown-genre" in codes


def test_serialize_then_reload_is_byte_stable(fixtures_dir):
    rows = parse_metadata((fixtures_dir / "metadata.tsv").read_text(encoding="utf-8"))
    once = serialize_metadata(rows)
    assert serialize_metadata(parse_metadata(once)) == once


def test_count_crosscheck(ud_corpus):
    counts = {}
    for sentence in ud_corpus:
        counts[sentence.work_id] = counts.get(sentence.work_id, 0) + 1
    good = [meta(work_id="cl_alpha", train_sents=counts["cl_alpha"])]
    assert validate_metadata(good, corpus_counts=counts) == []
    bad = [meta(work_id="cl_alpha", train_sents=counts["cl_alpha"] + 1)]
    codes = [v.code for v in validate_metadata(bad, corpus_counts=counts)]
    assert "count-mismatch" in codes


def test_strict_load_raises(tmp_path):
    table = tmp_path / "meta.tsv"
    header = "treebank\twork_id\tauthor\tcentury\tis_bible\tgenres\ttrain_sents\tdev_sents\ttest_sents"
    table.write_text(header + "\nPerseus\tw\tA\t0\tfalse\tspeech\t1\t0\t0\n")
    with pytest.raises(MetadataError, match="violations"):
        load_metadata(table)


def test_bad_header_rejected(tmp_path):
    table = tmp_path / "meta.tsv"
    table.write_text("wrong\theader\n")
    with pytest.raises(MetadataError, match="header"):
        load_metadata(table)

"""Command-line pipeline: convert, dedup, agree, metadata-validate,
split, eval, perm-test, lint.

Identical inputs, flags, and seed produce byte-identical outputs. Exit
codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, dedup, evaluation, reports, splits
from .agreement import STAGE_CONVERTED, STAGE_RAW, agreement_table
from .config import ConfigError, ToolConfig
from .conllu import ConlluError, write_conllu_file
from .harmonize import ALL_RULES
from .metadata import MetadataError, load_metadata, parse_metadata, validate_metadata
from .pipeline import aligned_pairs, convert_corpus, load_corpus
from .standardize import lint_token


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latintb",
        description="Latin treebank harmonization, deduplication, splits, and scoring.",
    )
    parser.add_argument("--version", action="version", version=f"latintb {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master random seed")
    common.add_argument("--config", type=Path, default=None, help="JSON config file")
    common.add_argument("--jobs", type=int, default=1, help="worker threads")
    common.add_argument("--output-dir", type=Path, default=Path("."), help="directory for artifacts")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", parents=[common], help="standardize and harmonize a corpus")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--flavor", choices=("ud", "lasla"), required=True)
    p.add_argument("--out", type=Path, required=True, help="output directory")

    p = sub.add_parser("dedup", parents=[common], help="find duplicate sentences across two corpora")
    p.add_argument("--a", dest="corpus_a", type=Path, required=True)
    p.add_argument("--b", dest="corpus_b", type=Path, required=True)
    p.add_argument("--a-flavor", choices=("ud", "lasla"), default="ud")
    p.add_argument("--b-flavor", choices=("ud", "lasla"), default="lasla")
    p.add_argument("--out", type=Path, required=True, help="duplicate manifest TSV")
    p.add_argument("--report", type=Path, default=None, help="per-work duplicate counts TSV")
    p.add_argument("--metadata", type=Path, default=None)

    p = sub.add_parser("agree", parents=[common], help="annotation agreement over duplicate tokens")
    p.add_argument("--a", dest="corpus_a", type=Path, required=True)
    p.add_argument("--b", dest="corpus_b", type=Path, required=True)
    p.add_argument("--a-flavor", choices=("ud", "lasla"), default="ud")
    p.add_argument("--b-flavor", choices=("ud", "lasla"), default="lasla")
    p.add_argument("--dups", type=Path, required=True, help="duplicate manifest TSV")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--exclude-anomalous", action="store_true")

    p = sub.add_parser("metadata-validate", parents=[common], help="check a metadata table")
    p.add_argument("--file", type=Path, required=True)
    p.add_argument("--corpus", type=Path, default=None, help="cross-check sentence counts")
    p.add_argument("--flavor", choices=("ud", "lasla"), default="ud")

    p = sub.add_parser("split", parents=[common], help="build constrained time-period splits")
    p.add_argument("--ud", type=Path, required=True, help="standardized UD corpus")
    p.add_argument("--lasla", type=Path, default=None, help="standardized LASLA corpus")
    p.add_argument("--metadata", type=Path, required=True)
    p.add_argument("--dups", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.add_argument("--published-assignment", type=Path, default=None,
                   help="work-level assignment table (default: shipped table)")
    p.add_argument("--no-published", action="store_true",
                   help="ignore the shipped assignment and fill greedily")

    p = sub.add_parser("eval", parents=[common], help="score a prediction file against gold")
    p.add_argument("--gold", type=Path, required=True)
    p.add_argument("--pred", type=Path, required=True)
    p.add_argument("--out", type=Path, default=None, help="JSON report")

    p = sub.add_parser("perm-test", parents=[common], help="paired permutation test between two prediction files")
    p.add_argument("--gold", type=Path, required=True)
    p.add_argument("--a", dest="pred_a", type=Path, required=True)
    p.add_argument("--b", dest="pred_b", type=Path, required=True)
    p.add_argument("--metric", default="morph-acc",
                   help="morph-acc | upos-macro-f1 | macro-f1:<Feature> | value-f1:<Feature>=<Value>")
    p.add_argument("--n", dest="iterations", type=int, default=10_000)
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("lint", parents=[common], help="legality and divergence flags for a corpus")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--flavor", choices=("ud", "lasla"), default="ud")
    p.add_argument("--out", type=Path, required=True)

    return parser


def _load_converted(path: Path, flavor: str, config: ToolConfig, jobs: int):
    sentences, _ = load_corpus(path, flavor, config, jobs=jobs)
    return convert_corpus(sentences, flavor, config)


def cmd_convert(args, config: ToolConfig) -> int:
    args.out.mkdir(parents=True, exist_ok=True)
    audit_rows = []
    anomaly_rows = []
    for file in sorted(
        p for p in ([args.input] if args.input.is_file() else args.input.iterdir())
        if p.suffix == ".conllu"
    ):
        sentences, _ = load_corpus(file, args.flavor, config, jobs=args.jobs)
        result = convert_corpus(sentences, args.flavor, config)
        write_conllu_file(args.out / file.name, result.sentences)
        for rule in ALL_RULES:
            if result.audit.get(rule):
                audit_rows.append((file.stem, rule, result.audit[rule]))
        anomaly_rows.extend(result.anomalies)
    reports.write_tsv(
        args.out / "harmonization_audit.tsv",
        ("corpus", "rule_id", "tokens_affected"),
        audit_rows,
        seed=args.seed,
        config_hash=config.config_hash,
    )
    reports.write_tsv(
        args.out / "anomalies.tsv",
        ("sent_id", "token_id", "code"),
        anomaly_rows,
        seed=args.seed,
        config_hash=config.config_hash,
    )
    return 0


def cmd_dedup(args, config: ToolConfig) -> int:
    corpus_a, _ = load_corpus(args.corpus_a, args.a_flavor, config, jobs=args.jobs)
    corpus_b, _ = load_corpus(args.corpus_b, args.b_flavor, config, jobs=args.jobs)
    pairs = dedup.find_duplicates(
        corpus_a,
        corpus_b,
        min_chars=config.dedup_min_chars,
        min_tokens=config.dedup_min_tokens,
    )
    dedup.write_manifest(
        args.out, pairs, footer=reports.footer(args.seed, config.config_hash)
    )
    if args.report is not None:
        metadata = load_metadata(args.metadata) if args.metadata else None
        rows = dedup.duplicate_report(pairs, metadata)
        reports.write_tsv(
            args.report,
            ("author", "work", "duplicates"),
            rows,
            seed=args.seed,
            config_hash=config.config_hash,
        )
    return 0


def cmd_agree(args, config: ToolConfig) -> int:
    corpus_a, _ = load_corpus(args.corpus_a, args.a_flavor, config, jobs=args.jobs)
    corpus_b, _ = load_corpus(args.corpus_b, args.b_flavor, config, jobs=args.jobs)
    converted_a = convert_corpus(corpus_a, args.a_flavor, config)
    converted_b = convert_corpus(corpus_b, args.b_flavor, config)
    manifest = dedup.read_manifest(args.dups)
    pairs = aligned_pairs(
        manifest, corpus_a, corpus_b, converted_a.records, converted_b.records
    )
    include = not args.exclude_anomalous
    before = agreement_table(pairs, None, STAGE_RAW, include_anomalous=include)
    after = agreement_table(pairs, None, STAGE_CONVERTED, include_anomalous=include)
    after_by_feature = {row.feature: row for row in after}
    rows = []
    features = list(dict.fromkeys([r.feature for r in before] + [r.feature for r in after]))
    for feature in features:
        b = next((r for r in before if r.feature == feature), None)
        a = after_by_feature.get(feature)
        rows.append(
            (
                feature,
                b.percent_str() if b else "--",
                b.same if b else "--",
                b.total if b else "--",
                a.percent_str() if a else "--",
                a.same if a else "--",
                a.total if a else "--",
            )
        )
    reports.write_tsv(
        args.out,
        ("feature", "before_pct", "before_same", "before_total",
         "after_pct", "after_same", "after_total"),
        rows,
        seed=args.seed,
        config_hash=config.config_hash,
    )
    return 0


def cmd_metadata_validate(args, config: ToolConfig) -> int:
    rows = parse_metadata(args.file.read_text(encoding="utf-8"))
    corpus_counts = None
    if args.corpus is not None:
        sentences, _ = load_corpus(args.corpus, args.flavor, config, jobs=args.jobs)
        corpus_counts = {}
        for sentence in sentences:
            work = sentence.work_id or "?"
            corpus_counts[work] = corpus_counts.get(work, 0) + 1
    violations = validate_metadata(rows, corpus_counts=corpus_counts)
    for violation in violations:
        print(f"{violation.work_id}\t{violation.code}\t{violation.message}")
    if violations:
        print(f"{len(violations)} violations", file=sys.stderr)
        return 1
    print("metadata ok")
    return 0


def cmd_split(args, config: ToolConfig) -> int:
    ud_corpus, _ = load_corpus(args.ud, "ud", config, jobs=args.jobs)
    lasla_corpus = None
    if args.lasla is not None:
        lasla_corpus, _ = load_corpus(args.lasla, "lasla", config, jobs=args.jobs)
    metadata = load_metadata(args.metadata)
    manifest_rows = dedup.read_manifest(args.dups)
    published = None
    if not args.no_published:
        published = splits.load_published_assignment(args.published_assignment)
    try:
        manifests = splits.build_splits(
            ud_corpus,
            lasla_corpus,
            metadata,
            manifest_rows,
            args.seed,
            dev_fraction=config.dev_fraction,
            min_test=config.min_test_sentences,
            published=published,
        )
    except splits.InfeasibleSplitError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 1

    args.out.mkdir(parents=True, exist_ok=True)
    audit_rows = []
    all_passed = True
    for manifest in manifests:
        results = splits.audit_splits(
            manifest,
            ud_corpus,
            lasla_corpus,
            metadata,
            manifest_rows,
            min_test=config.min_test_sentences,
            atomicity_exceptions=config.atomicity_exceptions,
        )
        manifest = splits.SplitManifest(
            period=manifest.period,
            seed=manifest.seed,
            train_works=manifest.train_works,
            test_works=manifest.test_works,
            dev_sentences=manifest.dev_sentences,
            audit=tuple(results),
        )
        splits.write_manifest(args.out / f"{manifest.period}.manifest.json", manifest)
        parts = splits.materialize(manifest, ud_corpus, lasla_corpus)
        period_dir = args.out / manifest.period
        period_dir.mkdir(exist_ok=True)
        for split_name, sentences in parts.items():
            write_conllu_file(period_dir / f"{split_name}.conllu", sentences)
            audit_rows.append((manifest.period, f"{split_name}-sentences", len(sentences), ""))
        for result in results:
            all_passed &= result.passed
            audit_rows.append(
                (
                    manifest.period,
                    result.constraint,
                    "pass" if result.passed else "FAIL",
                    "; ".join(result.details),
                )
            )
    reports.write_tsv(
        args.out / "split_audit.tsv",
        ("period", "check", "result", "details"),
        audit_rows,
        seed=args.seed,
        config_hash=config.config_hash,
    )
    return 0 if all_passed else 1


def _aligned_records(gold_path: Path, pred_path: Path, config: ToolConfig, jobs: int):
    gold, _ = load_corpus(gold_path, "ud", config, jobs=jobs)
    pred, _ = load_corpus(pred_path, "ud", config, jobs=jobs)
    evaluation.check_alignment(gold, pred)
    return evaluation.records_of(gold), evaluation.records_of(pred)


def cmd_eval(args, config: ToolConfig) -> int:
    gold_records, pred_records = _aligned_records(args.gold, args.pred, config, args.jobs)
    report = evaluation.evaluate(
        gold_records, pred_records, include_upos=config.include_upos_in_string
    )
    print(report.format_table())
    if args.out is not None:
        payload = report.to_dict()
        payload["provenance"] = reports.footer(args.seed, config.config_hash)
        args.out.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return 0


def cmd_perm_test(args, config: ToolConfig) -> int:
    try:
        evaluation.parse_metric(args.metric)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    gold, _ = load_corpus(args.gold, "ud", config, jobs=args.jobs)
    pred_a, _ = load_corpus(args.pred_a, "ud", config, jobs=args.jobs)
    pred_b, _ = load_corpus(args.pred_b, "ud", config, jobs=args.jobs)
    evaluation.check_alignment(gold, pred_a)
    evaluation.check_alignment(gold, pred_b)
    result = evaluation.permutation_test(
        evaluation.records_of(gold),
        evaluation.records_of(pred_a),
        evaluation.records_of(pred_b),
        args.metric,
        iterations=args.iterations,
        seed=args.seed,
        jobs=args.jobs,
        include_upos=config.include_upos_in_string,
    )
    line = (
        f"metric={result.metric} observed_diff={result.observed_diff:.6f} "
        f"p={result.p_value:.4f} iterations={result.iterations} seed={result.seed}"
    )
    print(line)
    if result.note:
        print(f"note: {result.note}")
    if args.out is not None:
        reports.write_tsv(
            args.out,
            ("metric", "observed_diff", "p_value", "iterations", "seed"),
            [(result.metric, f"{result.observed_diff:.6f}", f"{result.p_value:.4f}",
              result.iterations, result.seed)],
            seed=args.seed,
            config_hash=config.config_hash,
        )
    return 0


def cmd_lint(args, config: ToolConfig) -> int:
    sentences, _ = load_corpus(args.input, args.flavor, config, jobs=args.jobs)
    converted = convert_corpus(sentences, args.flavor, config)
    rows = []
    for sentence, records in zip(converted.sentences, converted.records):
        for token, record in zip(sentence.tokens, records):
            for code in lint_token(token, record, config.legality_rules):
                rows.append((sentence.sent_id, token.id, code))
    reports.write_tsv(
        args.out,
        ("sent_id", "token_id", "code"),
        rows,
        seed=args.seed,
        config_hash=config.config_hash,
    )
    return 0


_COMMANDS = {
    "convert": cmd_convert,
    "dedup": cmd_dedup,
    "agree": cmd_agree,
    "metadata-validate": cmd_metadata_validate,
    "split": cmd_split,
    "eval": cmd_eval,
    "perm-test": cmd_perm_test,
    "lint": cmd_lint,
}


def _resolve_outputs(args) -> None:
    # relative output paths land under --output-dir
    for attr in ("out", "report"):
        value = getattr(args, attr, None)
        if isinstance(value, Path) and not value.is_absolute():
            setattr(args, attr, args.output_dir / value)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    _resolve_outputs(args)
    try:
        config = ToolConfig.load(args.config)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](args, config)
    except (ConlluError, MetadataError, evaluation.AlignmentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

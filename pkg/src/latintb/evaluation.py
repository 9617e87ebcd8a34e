"""Score prediction files against gold standardized corpora.

Three metrics: whole-string morphological accuracy (UPOS scored
separately), per-feature macro F1 with None as a first-class value, and
one-vs-rest F1 for single feature values. Two prediction sets are
compared by randomized permutation testing with sentence-level swaps.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .conllu import Sentence
from .standardize import MORPH_FEATURES, StandardRecord, record_from_standard_feats

REPORT_FEATURES = ("UPOS",) + MORPH_FEATURES

Records = Sequence[Sequence[StandardRecord]]


class AlignmentError(ValueError):
    """Prediction file does not line up with gold; never realigned."""


def check_alignment(gold: Sequence[Sentence], pred: Sequence[Sentence]) -> None:
    if len(gold) != len(pred):
        raise AlignmentError(
            f"sentence count mismatch: gold {len(gold)}, predictions {len(pred)}"
        )
    for g, p in zip(gold, pred):
        if len(g.tokens) != len(p.tokens):
            raise AlignmentError(
                f"sentence {g.sent_id!r}: token count mismatch "
                f"({len(g.tokens)} vs {len(p.tokens)})"
            )
        for tg, tp in zip(g.tokens, p.tokens):
            if tg.form != tp.form:
                raise AlignmentError(
                    f"sentence {g.sent_id!r} token {tg.id}: form mismatch "
                    f"({tg.form!r} vs {tp.form!r})"
                )


def records_of(sentences: Sequence[Sentence]) -> list[list[StandardRecord]]:
    return [[record_from_standard_feats(t) for t in s.tokens] for s in sentences]


def _check_shape(gold: Records, pred: Records) -> None:
    if len(gold) != len(pred) or any(len(g) != len(p) for g, p in zip(gold, pred)):
        raise AlignmentError("gold and prediction records are not aligned")


def whole_string_accuracy(
    gold: Records, pred: Records, *, include_upos: bool = False
) -> float:
    """Fraction of tokens whose sorted feature string matches gold exactly."""
    _check_shape(gold, pred)
    correct = total = 0
    for gold_sent, pred_sent in zip(gold, pred):
        for g, p in zip(gold_sent, pred_sent):
            total += 1
            if g.morph_string(include_upos=include_upos) == p.morph_string(
                include_upos=include_upos
            ):
                correct += 1
    if total == 0:
        raise AlignmentError("no tokens to score")
    return correct / total


def _flat_labels(records: Records, feature: str) -> list[str]:
    return [r.label_for(feature) for sent in records for r in sent]


def _f1(tp: int, fp: int, fn: int) -> float:
    denom = 2 * tp + fp + fn
    return 2 * tp / denom if denom else 0.0


def macro_f1(gold: Records, pred: Records, feature: str) -> float:
    """Unweighted mean of per-class F1 over the values observed in gold
    or predictions, plus None, which is a value like any other."""
    if feature not in REPORT_FEATURES:
        raise ValueError(f"unknown feature {feature!r}")
    _check_shape(gold, pred)
    gold_labels = _flat_labels(gold, feature)
    pred_labels = _flat_labels(pred, feature)
    classes = sorted(set(gold_labels) | set(pred_labels) | {"None"})
    scores = []
    for cls in classes:
        tp = sum(1 for g, p in zip(gold_labels, pred_labels) if g == cls and p == cls)
        fp = sum(1 for g, p in zip(gold_labels, pred_labels) if g != cls and p == cls)
        fn = sum(1 for g, p in zip(gold_labels, pred_labels) if g == cls and p != cls)
        scores.append(_f1(tp, fp, fn))
    return sum(scores) / len(scores)


@dataclass(frozen=True, slots=True)
class ValueScore:
    precision: float
    recall: float
    f1: float
    support: int
    observed: bool = True  # False when the value occurs in neither file


def per_value_f1(gold: Records, pred: Records, feature: str, value: str) -> ValueScore:
    """One-vs-rest precision/recall/F1 for one feature value."""
    if feature not in REPORT_FEATURES:
        raise ValueError(f"unknown feature {feature!r}")
    _check_shape(gold, pred)
    gold_labels = _flat_labels(gold, feature)
    pred_labels = _flat_labels(pred, feature)
    tp = sum(1 for g, p in zip(gold_labels, pred_labels) if g == value and p == value)
    fp = sum(1 for g, p in zip(gold_labels, pred_labels) if g != value and p == value)
    fn = sum(1 for g, p in zip(gold_labels, pred_labels) if g == value and p != value)
    support = tp + fn
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / support if support else 0.0
    return ValueScore(
        precision=precision,
        recall=recall,
        f1=_f1(tp, fp, fn),
        support=support,
        observed=bool(support or tp + fp),
    )


@dataclass(slots=True)
class EvalReport:
    accuracy: float
    token_count: int
    macro_f1: dict[str, float]
    per_value: dict[str, dict[str, ValueScore]]

    def to_dict(self) -> dict:
        return {
            "whole_string_accuracy": self.accuracy,
            "token_count": self.token_count,
            "macro_f1": dict(self.macro_f1),
            "per_value_f1": {
                feature: {
                    value: {
                        "precision": s.precision,
                        "recall": s.recall,
                        "f1": s.f1,
                        "support": s.support,
                        "observed": s.observed,
                    }
                    for value, s in values.items()
                }
                for feature, values in self.per_value.items()
            },
        }

    def format_table(self) -> str:
        lines = [
            f"tokens scored        {self.token_count}",
            f"whole-string acc     {self.accuracy:.4f}",
            "",
            "feature      macro-F1",
        ]
        for feature, score in self.macro_f1.items():
            lines.append(f"{feature:<12} {score:.4f}")
        lines.append("")
        lines.append("feature      value        P      R      F1     support")
        for feature, values in self.per_value.items():
            for value, s in values.items():
                lines.append(
                    f"{feature:<12} {value:<12} {s.precision:.3f}  {s.recall:.3f}  "
                    f"{s.f1:.3f}  {s.support}"
                )
        return "\n".join(lines)


def evaluate(gold: Records, pred: Records, *, include_upos: bool = False) -> EvalReport:
    _check_shape(gold, pred)
    token_count = sum(len(s) for s in gold)
    macro = {f: macro_f1(gold, pred, f) for f in REPORT_FEATURES}
    per_value: dict[str, dict[str, ValueScore]] = {}
    for feature in REPORT_FEATURES:
        labels = sorted(
            set(_flat_labels(gold, feature)) | set(_flat_labels(pred, feature)) | {"None"}
        )
        per_value[feature] = {
            value: per_value_f1(gold, pred, feature, value) for value in labels
        }
    return EvalReport(
        accuracy=whole_string_accuracy(gold, pred, include_upos=include_upos),
        token_count=token_count,
        macro_f1=macro,
        per_value=per_value,
    )


# ---------------------------------------------------------------------------
# Permutation testing. Metrics are reduced to per-sentence sufficient
# statistics once, after which every swap pattern is a matrix product.


def parse_metric(name: str) -> tuple[str, str | None, str | None]:
    """Metric spec -> (kind, feature, value).

    Accepted: "morph-acc", "upos-macro-f1", "macro-f1:<Feature>",
    "value-f1:<Feature>=<Value>".
    """
    if name == "morph-acc":
        return ("acc", None, None)
    if name == "upos-macro-f1":
        return ("macro", "UPOS", None)
    if name.startswith("macro-f1:"):
        feature = name.split(":", 1)[1]
        if feature not in REPORT_FEATURES:
            raise ValueError(f"unknown feature in metric {name!r}")
        return ("macro", feature, None)
    if name.startswith("value-f1:"):
        spec = name.split(":", 1)[1]
        if "=" not in spec:
            raise ValueError(f"value metric needs Feature=Value, got {name!r}")
        feature, value = spec.split("=", 1)
        if feature not in REPORT_FEATURES:
            raise ValueError(f"unknown feature in metric {name!r}")
        return ("value", feature, value)
    raise ValueError(f"unknown metric {name!r}")


class _AccuracyMachine:
    def __init__(self, gold: Records, a: Records, b: Records, include_upos: bool):
        def strings(records):
            return [
                [r.morph_string(include_upos=include_upos) for r in sent]
                for sent in records
            ]

        gold_s, a_s, b_s = strings(gold), strings(a), strings(b)
        correct_a = np.array(
            [sum(g == p for g, p in zip(gs, ps)) for gs, ps in zip(gold_s, a_s)],
            dtype=np.float64,
        )
        correct_b = np.array(
            [sum(g == p for g, p in zip(gs, ps)) for gs, ps in zip(gold_s, b_s)],
            dtype=np.float64,
        )
        self.total = float(sum(len(s) for s in gold))
        self.base = correct_a.sum() - correct_b.sum()
        self.delta = correct_b - correct_a

    def diffs(self, masks: np.ndarray) -> np.ndarray:
        return np.abs(self.base + 2.0 * masks @ self.delta) / self.total


class _MacroF1Machine:
    def __init__(self, gold: Records, a: Records, b: Records, feature: str):
        gold_l = [[r.label_for(feature) for r in sent] for sent in gold]
        a_l = [[r.label_for(feature) for r in sent] for sent in a]
        b_l = [[r.label_for(feature) for r in sent] for sent in b]
        classes = sorted(
            {l for sent in gold_l for l in sent}
            | {l for sent in a_l for l in sent}
            | {l for sent in b_l for l in sent}
            | {"None"}
        )
        self.classes = classes
        index = {c: k for k, c in enumerate(classes)}
        n_sent, n_cls = len(gold_l), len(classes)

        def stats(pred_l):
            # per sentence, per class: tp, fp, fn, predicted-count
            out = np.zeros((n_sent, n_cls, 4), dtype=np.float64)
            for s, (gs, ps) in enumerate(zip(gold_l, pred_l)):
                for g, p in zip(gs, ps):
                    gi, pi = index[g], index[p]
                    if gi == pi:
                        out[s, gi, 0] += 1
                    else:
                        out[s, pi, 1] += 1
                        out[s, gi, 2] += 1
                    out[s, pi, 3] += 1
            return out.reshape(n_sent, n_cls * 4)

        stats_a = stats(a_l)
        stats_b = stats(b_l)
        self.n_cls = n_cls
        self.base_a = stats_a.sum(axis=0)
        self.base_b = stats_b.sum(axis=0)
        self.delta = stats_b - stats_a
        gold_counts = np.zeros(n_cls)
        for sent in gold_l:
            for label in sent:
                gold_counts[index[label]] += 1
        self.always_active = (gold_counts > 0) | np.array(
            [c == "None" for c in classes]
        )

    def _macro(self, totals: np.ndarray) -> np.ndarray:
        totals = totals.reshape(totals.shape[0], self.n_cls, 4)
        tp, fp, fn, predicted = (totals[..., k] for k in range(4))
        denom = 2 * tp + fp + fn
        f1 = np.divide(2 * tp, denom, out=np.zeros_like(denom), where=denom > 0)
        active = self.always_active[None, :] | (predicted > 0)
        return (f1 * active).sum(axis=1) / active.sum(axis=1)

    def diffs(self, masks: np.ndarray) -> np.ndarray:
        moved = masks @ self.delta
        macro_a = self._macro(self.base_a[None, :] + moved)
        macro_b = self._macro(self.base_b[None, :] - moved)
        return np.abs(macro_a - macro_b)


class _ValueF1Machine:
    def __init__(self, gold: Records, a: Records, b: Records, feature: str, value: str):
        def stats(pred):
            out = np.zeros((len(gold), 3), dtype=np.float64)
            for s, (gs, ps) in enumerate(zip(gold, pred)):
                for g, p in zip(gs, ps):
                    g_hit = g.label_for(feature) == value
                    p_hit = p.label_for(feature) == value
                    if g_hit and p_hit:
                        out[s, 0] += 1
                    elif p_hit:
                        out[s, 1] += 1
                    elif g_hit:
                        out[s, 2] += 1
            return out

        stats_a, stats_b = stats(a), stats(b)
        self.base_a = stats_a.sum(axis=0)
        self.base_b = stats_b.sum(axis=0)
        self.delta = stats_b - stats_a

    @staticmethod
    def _f1(totals: np.ndarray) -> np.ndarray:
        denom = 2 * totals[:, 0] + totals[:, 1] + totals[:, 2]
        return np.divide(
            2 * totals[:, 0], denom, out=np.zeros_like(denom), where=denom > 0
        )

    def diffs(self, masks: np.ndarray) -> np.ndarray:
        moved = masks @ self.delta
        return np.abs(
            self._f1(self.base_a[None, :] + moved)
            - self._f1(self.base_b[None, :] - moved)
        )


def _build_machine(
    gold: Records, a: Records, b: Records, metric: str, include_upos: bool
):
    kind, feature, value = parse_metric(metric)
    if kind == "acc":
        return _AccuracyMachine(gold, a, b, include_upos)
    if kind == "macro":
        return _MacroF1Machine(gold, a, b, feature)
    return _ValueF1Machine(gold, a, b, feature, value)


@dataclass(frozen=True, slots=True)
class PermutationResult:
    metric: str
    observed_diff: float
    p_value: float
    iterations: int
    seed: int
    note: str | None = None


def _swap_masks(seed: int, start: int, stop: int, n_sentences: int) -> np.ndarray:
    masks = np.empty((stop - start, n_sentences), dtype=np.float64)
    for i in range(start, stop):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(i,)))
        masks[i - start] = rng.integers(0, 2, n_sentences)
    return masks


def permutation_test(
    gold: Records,
    preds_a: Records,
    preds_b: Records,
    metric: str = "morph-acc",
    *,
    iterations: int = 10_000,
    seed: int = 0,
    jobs: int = 1,
    include_upos: bool = False,
) -> PermutationResult:
    """Paired randomization test over sentence-level swaps.

    Each iteration independently swaps both models' predictions per
    sentence with probability 1/2 and records the absolute metric
    difference over the whole shuffled set; p is the fraction of
    simulated differences at least as large as the observed one.
    Iteration i draws from a seed derived from (seed, i), so results do
    not depend on the number of worker threads.
    """
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    _check_shape(gold, preds_a)
    _check_shape(gold, preds_b)
    machine = _build_machine(gold, preds_a, preds_b, metric, include_upos)
    n_sentences = len(gold)

    observed = float(machine.diffs(np.zeros((1, n_sentences)))[0])

    chunk = 2048
    ranges = [(start, min(start + chunk, iterations)) for start in range(0, iterations, chunk)]

    def run(span: tuple[int, int]) -> np.ndarray:
        return machine.diffs(_swap_masks(seed, span[0], span[1], n_sentences))

    if jobs > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(run, ranges))
    else:
        parts = [run(span) for span in ranges]
    sims = np.concatenate(parts)

    hits = int((sims >= observed).sum())
    p_value = hits / iterations
    note = None
    if hits == 0:
        note = f"no simulated difference reached the observed one; p < {3 / iterations:.2g} (rule of three)"
    return PermutationResult(
        metric=metric,
        observed_diff=observed,
        p_value=p_value,
        iterations=iterations,
        seed=seed,
        note=note,
    )

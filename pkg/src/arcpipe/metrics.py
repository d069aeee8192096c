"""Binary-classifier evaluation: recall rates, UAR, F1, ROC, AUC.

UAR = (R+ + R-)/2 with R+ = TP/(TP+FN) and R- = TN/(TN+FP).
F1 = TP / (TP + (FP+FN)/2), computed for the positive class; 0 by
convention when the denominator is 0.  Thresholding predicts positive
when score >= threshold.  The ROC sweeps the distinct score values
descending (ties collapse to one point) plus a sentinel giving (0,0);
AUC is the trapezoidal integral over the false-positive rate, checked
elsewhere against an independent exhaustive pairwise oracle.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import FormatError, ValidationError

SCORES_HEADER = ("example_id", "score", "label")


@dataclass(frozen=True, slots=True)
class ScoredExample:
    example_id: str
    score: float
    label: str


@dataclass(frozen=True, slots=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True, slots=True)
class RocPoint:
    fpr: float
    tpr: float
    threshold: float


@dataclass(frozen=True, slots=True)
class MetricsReport:
    counts: ConfusionCounts
    r_plus: float
    r_minus: float
    uar: float
    f1: float
    auc: float
    roc: list[RocPoint]


def confusion_at(scored: Iterable[ScoredExample], threshold: float) -> ConfusionCounts:
    """Confusion counts with positive predicted iff score >= threshold."""
    tp = fp = tn = fn = 0
    for s in scored:
        if s.score >= threshold:
            if s.label == "+":
                tp += 1
            else:
                fp += 1
        else:
            if s.label == "+":
                fn += 1
            else:
                tn += 1
    return ConfusionCounts(tp, fp, tn, fn)


def recall_rates(counts: ConfusionCounts) -> tuple[float, float]:
    if counts.tp + counts.fn == 0 or counts.tn + counts.fp == 0:
        raise ValidationError("recall undefined: a class has no examples")
    return counts.tp / (counts.tp + counts.fn), counts.tn / (counts.tn + counts.fp)


def uar(counts: ConfusionCounts) -> float:
    r_plus, r_minus = recall_rates(counts)
    return (r_plus + r_minus) / 2


def f1(counts: ConfusionCounts) -> float:
    denom = counts.tp + (counts.fp + counts.fn) / 2
    return counts.tp / denom if denom else 0.0


def roc_curve(scored: list[ScoredExample]) -> list[RocPoint]:
    """ROC points over descending distinct scores, (0,0) first, (1,1) last."""
    pos = sum(1 for s in scored if s.label == "+")
    neg = len(scored) - pos
    if pos == 0 or neg == 0:
        raise ValidationError("ROC needs at least one example of each class")
    points = [RocPoint(0.0, 0.0, math.inf)]
    ordered = sorted(scored, key=lambda s: s.score, reverse=True)
    tp = fp = 0
    i = 0
    while i < len(ordered):
        threshold = ordered[i].score
        while i < len(ordered) and ordered[i].score == threshold:
            if ordered[i].label == "+":
                tp += 1
            else:
                fp += 1
            i += 1
        points.append(RocPoint(fp / neg, tp / pos, threshold))
    return points


def auc_trapezoid(roc: list[RocPoint]) -> float:
    area = 0.0
    for a, b in zip(roc, roc[1:]):
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2
    return area


def auc_pairwise_oracle(scored: list[ScoredExample]) -> float:
    """Mean pair credit over all (+,-) pairs: 1 if the positive scores
    higher, 0.5 on a tie, else 0.  Independent check for the ROC integral."""
    pos = np.array([s.score for s in scored if s.label == "+"], dtype=float)
    neg = np.array([s.score for s in scored if s.label == "-"], dtype=float)
    if pos.size == 0 or neg.size == 0:
        raise ValidationError("pairwise AUC needs at least one example of each class")
    diff = pos[:, None] - neg[None, :]
    credit = np.count_nonzero(diff > 0) + 0.5 * np.count_nonzero(diff == 0)
    return float(credit / (pos.size * neg.size))


def evaluate(scored: list[ScoredExample], threshold: float = 0.5) -> MetricsReport:
    """Full report at the given operating threshold (default 0.5)."""
    counts = confusion_at(scored, threshold)
    r_plus, r_minus = recall_rates(counts)
    roc = roc_curve(scored)
    return MetricsReport(
        counts=counts,
        r_plus=r_plus,
        r_minus=r_minus,
        uar=(r_plus + r_minus) / 2,
        f1=f1(counts),
        auc=auc_trapezoid(roc),
        roc=roc,
    )


def write_report(report: MetricsReport, path) -> None:
    payload = {
        "uar": report.uar,
        "r_plus": report.r_plus,
        "r_minus": report.r_minus,
        "f1": report.f1,
        "auc": report.auc,
        "counts": {
            "tp": report.counts.tp,
            "fp": report.counts.fp,
            "tn": report.counts.tn,
            "fn": report.counts.fn,
        },
    }
    with open(path, "w", encoding="utf-8", newline="\n") as out:
        json.dump(payload, out, indent=2)
        out.write("\n")


def write_roc_csv(roc: list[RocPoint], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["threshold", "fpr", "tpr"])
        for p in roc:
            writer.writerow([repr(p.threshold), repr(p.fpr), repr(p.tpr)])


def write_scores(rows: Iterable[tuple[str, float, str]], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(SCORES_HEADER)
        for example_id, score, label in rows:
            writer.writerow([example_id, repr(float(score)), label])


def read_scores(path) -> list[ScoredExample]:
    """Read a scores CSV, validating every row.

    Scores must be finite and within [0, 1]; labels must be "+" or "-".
    Violations raise FormatError naming the row.
    """
    scored = []
    with open(path, "r", encoding="utf-8", newline="") as stream:
        reader = csv.reader(stream)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError(f"{path}: empty scores file") from None
        if tuple(header) != SCORES_HEADER:
            raise FormatError(f"{path}:1: expected header {','.join(SCORES_HEADER)}")
        for rowno, row in enumerate(reader, 2):
            if not row:
                continue
            if len(row) != 3:
                raise FormatError(f"{path}:{rowno}: expected 3 fields, got {len(row)}")
            example_id, raw_score, label = row
            try:
                score = float(raw_score)
            except ValueError:
                raise FormatError(f"{path}:{rowno}: score is not a number: {raw_score!r}") from None
            if not math.isfinite(score) or not 0.0 <= score <= 1.0:
                raise FormatError(f"{path}:{rowno}: score out of range [0, 1]: {raw_score}")
            if label not in ("+", "-"):
                raise FormatError(f"{path}:{rowno}: label must be '+' or '-', got {label!r}")
            scored.append(ScoredExample(example_id, score, label))
    return scored

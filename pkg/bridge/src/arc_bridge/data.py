"""Export-file reading and label mapping.

The bridge consumes only the pipeline's export JSONL
({"example_id", "sentences", "label", "split"} per line, integer
labels with 1 positive) and produces the shared scores CSV
("example_id,score,label" with +/- labels); it never reads raw
corpora or dataset files.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Iterable

EXPORT_KEYS = ("example_id", "sentences", "label", "split")
SCORES_HEADER = ("example_id", "score", "label")


@dataclass(frozen=True)
class BridgeExample:
    example_id: str
    sentences: tuple[str, ...]
    label: int
    split: str


def score_label(label: int) -> str:
    """Map an export label back to the scores-CSV label alphabet."""
    return "+" if label == 1 else "-"


def read_export(path) -> list[BridgeExample]:
    """Read export JSONL, validating the schema line by line."""
    examples = []
    with open(path, "r", encoding="utf-8") as stream:
        for lineno, raw in enumerate(stream, 1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as err:
                raise ValueError(f"{path}:{lineno}: invalid JSON ({err.msg})") from err
            if not isinstance(obj, dict) or tuple(sorted(obj)) != tuple(sorted(EXPORT_KEYS)):
                raise ValueError(f"{path}:{lineno}: expected exactly the keys {EXPORT_KEYS}")
            sentences = obj["sentences"]
            if not isinstance(sentences, list) or not all(
                isinstance(s, str) for s in sentences
            ):
                raise ValueError(f"{path}:{lineno}: sentences must be a list of strings")
            if obj["label"] not in (0, 1):
                raise ValueError(f"{path}:{lineno}: label must be 0 or 1")
            if obj["split"] not in ("train", "test"):
                raise ValueError(f"{path}:{lineno}: split must be train or test")
            examples.append(
                BridgeExample(
                    str(obj["example_id"]), tuple(sentences), obj["label"], obj["split"]
                )
            )
    if not examples:
        raise ValueError(f"{path}: export file is empty")
    return examples


def write_scores(rows: Iterable[tuple[str, float, int]], path) -> None:
    """Write the scores CSV consumed by the pipeline's eval command."""
    with open(path, "w", encoding="utf-8", newline="") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(SCORES_HEADER)
        for example_id, score, label in rows:
            writer.writerow([example_id, repr(float(score)), score_label(label)])

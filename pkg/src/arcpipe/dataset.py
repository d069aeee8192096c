"""Context-window dataset construction.

Turns a canonical corpus into labeled examples for any (n, m) window:
n sentences before the anchor, the anchor sentence, and m sentences
after it.  An example is positive when a response event occurs between
the anchor and the next sentence.  Windows never cross document
boundaries, and a window is used only if none of its sentences is
adjacent to a response event other than the anchor's own; anchors
without a clean full window are dropped rather than padded.

Negative anchors are drawn uniformly (seeded) from event-free positions
with clean full windows.  All sampling, balancing, and splitting is a
pure function of (corpus, config, seed).
"""

from __future__ import annotations

import json
import logging
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .errors import FormatError, ValidationError
from .ingest import Document, RESPONSE_KINDS

log = logging.getLogger(__name__)

LABEL_POSITIVE = "+"
LABEL_NEGATIVE = "-"
LABELS = (LABEL_POSITIVE, LABEL_NEGATIVE)
SPLITS = ("train", "test")

DATASET_KEYS = ("example_id", "context", "label", "n", "m", "split")


@dataclass(frozen=True, slots=True)
class ContextConfig:
    """Window shape: n preceding and m following sentences."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.m < 0:
            raise ValidationError("context lengths n and m must be nonnegative")

    @property
    def width(self) -> int:
        return self.n + 1 + self.m


@dataclass(slots=True)
class Example:
    """A labeled context window anchored at one corpus position."""

    example_id: str
    context: list[str]
    label: str
    anchor: tuple[str, int]
    event_kinds: tuple[str, ...] = field(default=(), compare=False)


@dataclass(slots=True)
class ArcDataset:
    config: ContextConfig
    examples: list[Example]
    split_of: dict[str, str]
    seed: int | None
    stats: dict


def example_id_for(doc_id: str, line_idx: int, config: ContextConfig) -> str:
    return f"{doc_id}:{line_idx}:{config.n}:{config.m}"


def _event_prefix(doc: Document) -> list[int]:
    # prefix[i] = number of event boundaries among records 0..i-1
    acc = [0]
    for rec in doc.utterances:
        acc.append(acc[-1] + (1 if rec.events_after else 0))
    return acc


def _window_clear(doc: Document, t: int, config: ContextConfig, positive: bool) -> bool:
    """Full window exists and touches no event boundary besides the anchor's.

    A window covers records t-n..t+m; the event boundaries adjacent to
    its sentences are t-n-1..t+m (the boundary after record j carries
    record j's events_after).  For a positive anchor exactly the anchor
    boundary t holds events; for a negative anchor none does.
    """
    return _window_clear_fast(doc, _event_prefix(doc), t, config, positive)


def _window_clear_fast(
    doc: Document, prefix: list[int], t: int, config: ContextConfig, positive: bool
) -> bool:
    lo = t - config.n
    hi = t + config.m
    if lo < 0 or hi >= len(doc.utterances):
        return False
    boundary_events = prefix[hi + 1] - prefix[max(lo - 1, 0)]
    if positive:
        return bool(doc.utterances[t].events_after) and boundary_events == 1
    return not doc.utterances[t].events_after and boundary_events == 0


def _make_example(doc: Document, t: int, config: ContextConfig, label: str) -> Example:
    rec = doc.utterances[t]
    context = [doc.utterances[j].text for j in range(t - config.n, t + config.m + 1)]
    kinds = tuple(rec.events_after) if label == LABEL_POSITIVE else ()
    return Example(
        example_id=example_id_for(rec.doc_id, rec.line_idx, config),
        context=context,
        label=label,
        anchor=(rec.doc_id, rec.line_idx),
        event_kinds=kinds,
    )


def build_positive_examples(corpus: list[Document], config: ContextConfig) -> list[Example]:
    """One positive example per event anchor with a clean full window."""
    examples = []
    skipped = 0
    for doc in corpus:
        prefix = _event_prefix(doc)
        for t, rec in enumerate(doc.utterances):
            if not rec.events_after:
                continue
            if _window_clear_fast(doc, prefix, t, config, positive=True):
                examples.append(_make_example(doc, t, config, LABEL_POSITIVE))
            else:
                skipped += 1
    if skipped:
        log.info("build_positive_examples: skipped %d anchors without a clean window", skipped)
    return examples


def eligible_negative_anchors(corpus: list[Document], config: ContextConfig) -> list[tuple[Document, int]]:
    anchors = []
    for doc in corpus:
        prefix = _event_prefix(doc)
        for t, rec in enumerate(doc.utterances):
            if not rec.events_after and _window_clear_fast(doc, prefix, t, config, positive=False):
                anchors.append((doc, t))
    return anchors


def sample_negative_examples(
    corpus: list[Document], config: ContextConfig, count: int, seed: int
) -> list[Example]:
    """Uniformly sample negative anchors without replacement (seeded).

    Raises ValidationError when more examples are requested than there
    are eligible anchors.
    """
    eligible = eligible_negative_anchors(corpus, config)
    if count > len(eligible):
        raise ValidationError(
            f"requested {count} negative examples but only {len(eligible)} anchors are eligible"
        )
    rng = random.Random(seed)
    picked = sorted(rng.sample(range(len(eligible)), count))
    return [_make_example(eligible[i][0], eligible[i][1], config, LABEL_NEGATIVE) for i in picked]


def balance(positives: list[Example], negatives: list[Example], seed: int) -> list[Example]:
    """Downsample the larger class (seeded, order-preserving) to equality."""
    if not positives or not negatives:
        raise ValidationError("balance() needs at least one example of each class")
    rng = random.Random(seed)

    def downsample(examples: list[Example], k: int) -> list[Example]:
        if len(examples) == k:
            return list(examples)
        keep = sorted(rng.sample(range(len(examples)), k))
        return [examples[i] for i in keep]

    k = min(len(positives), len(negatives))
    return downsample(positives, k) + downsample(negatives, k)


def _cut(count: int, ratio: float) -> int:
    k = round(count * ratio)
    return min(max(k, 1), count - 1)


def split_train_test(
    examples: list[Example], ratio: float, seed: int, group_by_doc: bool = True
) -> dict[str, str]:
    """Assign each example_id to "train" or "test", stratified by label.

    Each class is shuffled (seeded) independently and cut at the ratio.
    With group_by_doc, all examples anchored in the same document land
    in the same split to prevent near-duplicate leakage; per-class
    counts then only approximate the ratio since documents are atomic.
    """
    if not 0 < ratio < 1:
        raise ValidationError(f"split ratio must be in (0, 1), got {ratio}")
    by_label: dict[str, list[Example]] = defaultdict(list)
    for ex in examples:
        by_label[ex.label].append(ex)
    for label in LABELS:
        if len(by_label[label]) < 2:
            raise ValidationError(
                f"class {label!r} has {len(by_label[label])} examples; need at least 2 to split"
            )

    rng = random.Random(seed)
    split_of: dict[str, str] = {}
    if not group_by_doc:
        for label in LABELS:
            order = list(by_label[label])
            rng.shuffle(order)
            k = _cut(len(order), ratio)
            for i, ex in enumerate(order):
                split_of[ex.example_id] = "train" if i < k else "test"
        return split_of

    groups: dict[str, list[Example]] = defaultdict(list)
    for ex in examples:
        groups[ex.anchor[0]].append(ex)
    doc_ids = sorted(groups)
    rng.shuffle(doc_ids)
    target = {label: _cut(len(by_label[label]), ratio) for label in LABELS}
    got = {label: 0 for label in LABELS}
    for doc_id in doc_ids:
        to_train = any(got[label] < target[label] for label in LABELS)
        for ex in groups[doc_id]:
            split_of[ex.example_id] = "train" if to_train else "test"
            if to_train:
                got[ex.label] += 1
    for split in SPLITS:
        present = {ex.label for ex in examples if split_of[ex.example_id] == split}
        if present != set(LABELS):
            raise ValidationError(
                f"document-grouped split left the {split} split without both classes; "
                "use more documents or disable grouping"
            )
    return split_of


def dataset_stats(config: ContextConfig, examples: list[Example], split_of: dict[str, str]) -> dict:
    """Counts per kind, per label per split, and the context-length histogram."""
    kind_counts = Counter(k for ex in examples for k in ex.event_kinds)
    by_split: dict[str, Counter] = {split: Counter() for split in SPLITS}
    total: Counter = Counter()
    lengths: Counter = Counter()
    for ex in examples:
        by_split[split_of[ex.example_id]][ex.label] += 1
        total[ex.label] += 1
        lengths[len(ex.context)] += 1
    return {
        "config": {"n": config.n, "m": config.m},
        "examples": {
            "total": {label: total[label] for label in LABELS},
            **{
                split: {label: by_split[split][label] for label in LABELS}
                for split in SPLITS
            },
        },
        "event_kinds": {kind: kind_counts.get(kind, 0) for kind in RESPONSE_KINDS},
        "context_length": {str(width): count for width, count in sorted(lengths.items())},
    }


def build_dataset(
    corpus: list[Document],
    config: ContextConfig,
    seed: int,
    balance_classes: bool = True,
    ratio: float = 0.8,
    group_by_doc: bool = True,
) -> ArcDataset:
    """Full construction: positives, sampled negatives, balance, split."""
    positives = build_positive_examples(corpus, config)
    if not positives:
        raise ValidationError(f"corpus yields no positive examples for window n={config.n} m={config.m}")
    eligible = len(eligible_negative_anchors(corpus, config))
    count = min(len(positives), eligible)
    if count == 0:
        raise ValidationError(f"corpus yields no negative anchors for window n={config.n} m={config.m}")
    if count < len(positives):
        log.info("only %d negative anchors eligible for %d positives", eligible, len(positives))
    negatives = sample_negative_examples(corpus, config, count, seed)
    if balance_classes:
        examples = balance(positives, negatives, seed)
    else:
        examples = positives + negatives
    split_of = split_train_test(examples, ratio, seed, group_by_doc)
    stats = dataset_stats(config, examples, split_of)
    return ArcDataset(config, examples, split_of, seed, stats)


def write_dataset(dataset: ArcDataset, out) -> None:
    """Write examples as JSONL (fixed key order, UTF-8)."""
    for ex in dataset.examples:
        out.write(
            json.dumps(
                {
                    "example_id": ex.example_id,
                    "context": ex.context,
                    "label": ex.label,
                    "n": dataset.config.n,
                    "m": dataset.config.m,
                    "split": dataset.split_of[ex.example_id],
                },
                ensure_ascii=False,
            )
            + "\n"
        )


def _parse_example_id(example_id: str, name: str, lineno: int) -> tuple[str, int]:
    parts = example_id.rsplit(":", 3)
    if len(parts) != 4:
        raise FormatError(f"{name}:{lineno}: malformed example_id {example_id!r}")
    try:
        return parts[0], int(parts[1])
    except ValueError as err:
        raise FormatError(f"{name}:{lineno}: malformed example_id {example_id!r}") from err


def read_dataset(stream, name: str = "<dataset>") -> ArcDataset:
    """Read dataset JSONL; schema violations raise FormatError with the line."""
    examples: list[Example] = []
    split_of: dict[str, str] = {}
    config: ContextConfig | None = None
    for lineno, raw in enumerate(stream, 1):
        raw = raw.strip()
        if not raw:
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as err:
            raise FormatError(f"{name}:{lineno}: invalid JSON ({err.msg})") from err
        if not isinstance(obj, dict) or tuple(sorted(obj)) != tuple(sorted(DATASET_KEYS)):
            raise FormatError(f"{name}:{lineno}: expected exactly the keys {DATASET_KEYS}")
        if obj["label"] not in LABELS or obj["split"] not in SPLITS:
            raise FormatError(f"{name}:{lineno}: bad label or split")
        context = obj["context"]
        if not isinstance(context, list) or not all(isinstance(s, str) for s in context):
            raise FormatError(f"{name}:{lineno}: context must be a list of strings")
        n, m = obj["n"], obj["m"]
        if not isinstance(n, int) or not isinstance(m, int) or n < 0 or m < 0:
            raise FormatError(f"{name}:{lineno}: n and m must be nonnegative integers")
        if config is None:
            config = ContextConfig(n, m)
        elif (n, m) != (config.n, config.m):
            raise FormatError(f"{name}:{lineno}: mixed window configs in one dataset")
        if len(context) != config.width:
            raise FormatError(
                f"{name}:{lineno}: context has {len(context)} sentences, expected {config.width}"
            )
        example_id = obj["example_id"]
        if not isinstance(example_id, str):
            raise FormatError(f"{name}:{lineno}: example_id must be a string")
        if example_id in split_of:
            raise FormatError(f"{name}:{lineno}: duplicate example_id {example_id!r}")
        anchor = _parse_example_id(example_id, name, lineno)
        examples.append(Example(example_id, context, obj["label"], anchor))
        split_of[example_id] = obj["split"]
    if config is None:
        raise FormatError(f"{name}: dataset is empty")
    stats = dataset_stats(config, examples, split_of)
    return ArcDataset(config, examples, split_of, None, stats)


def write_dataset_file(dataset: ArcDataset, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as out:
        write_dataset(dataset, out)


def read_dataset_file(path) -> ArcDataset:
    with open(path, "r", encoding="utf-8") as stream:
        return read_dataset(stream, name=str(path))


def write_stats_file(stats: dict, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as out:
        json.dump(stats, out, indent=2, ensure_ascii=False)
        out.write("\n")

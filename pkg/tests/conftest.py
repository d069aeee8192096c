"""Shared synthetic-corpus builders for the test suite."""

from __future__ import annotations

import itertools
import random

from arcpipe.dataset import ContextConfig, Example, example_id_for
from arcpipe.ingest import Document, UtteranceRecord

FILLERS = (
    "well you know that was quite a day out there really never thought about "
    "it this way before now maybe we should just go home and rest for while "
    "the show must keep going on friends come back soon every single time "
    "things turn strange here people say"
).split()

CUE = "zonk"


def rec(doc_id: str, idx: int, text: str, events=()) -> UtteranceRecord:
    return UtteranceRecord(doc_id, idx, text, list(events), "opus-lines")


def filler_sentence(rng: random.Random, extra: str | None = None) -> str:
    words = rng.choices(FILLERS, k=rng.randint(5, 9))
    if extra is not None:
        words.insert(rng.randrange(len(words) + 1), extra)
    return " ".join(words)


def future_cue_corpus(n_pos_docs: int, n_neg_docs: int, seed: int) -> list[Document]:
    """Cue planted only in the sentence after each positive anchor."""
    rng = random.Random(seed)
    docs = []
    for i in range(n_pos_docs):
        d = f"pos{i:05d}"
        docs.append(
            Document(
                d,
                [
                    rec(d, 0, filler_sentence(rng)),
                    rec(d, 1, filler_sentence(rng), ["laugh"]),
                    rec(d, 2, filler_sentence(rng, extra=CUE)),
                ],
            )
        )
    for i in range(n_neg_docs):
        d = f"neg{i:05d}"
        docs.append(Document(d, [rec(d, j, filler_sentence(rng)) for j in range(4)]))
    return docs


def history_cue_corpus(
    n_pos_docs: int, n_neg_docs: int, neg_len: int, seed: int
) -> list[Document]:
    """Cue planted uniformly in one of the 4 sentences preceding each anchor."""
    rng = random.Random(seed)
    docs = []
    for i in range(n_pos_docs):
        d = f"pos{i:05d}"
        cue_pos = rng.randrange(4)
        records = [
            rec(d, j, filler_sentence(rng, extra=CUE if j == cue_pos else None))
            for j in range(4)
        ]
        records.append(rec(d, 4, filler_sentence(rng), ["laugh"]))
        docs.append(Document(d, records))
    for i in range(n_neg_docs):
        d = f"neg{i:05d}"
        docs.append(Document(d, [rec(d, j, filler_sentence(rng)) for j in range(neg_len)]))
    return docs


def planted_cue_lines(n_blocks: int, seed: int) -> str:
    """Raw one-utterance-per-line text with the cue inside every event line.

    Each block is (filler, cue line + [LAUGHTER], filler, filler); the cue
    appears twice per event line and nowhere else, and fillers cycle
    round-robin so class-conditional filler counts stay nearly equal.
    """
    rng = random.Random(seed)
    wheel = itertools.cycle(FILLERS)

    def filler(cue: bool = False) -> str:
        words = [next(wheel) for _ in range(rng.randint(6, 9))]
        if cue:
            for _ in range(2):
                words.insert(rng.randrange(len(words) + 1), CUE)
        return " ".join(words)

    lines = []
    for _ in range(n_blocks):
        lines.append(filler())
        lines.append(filler(cue=True) + " [LAUGHTER]")
        lines.append(filler())
        lines.append(filler())
    return "\n".join(lines) + "\n"


def paired_cue_examples(n_per_class: int, seed: int) -> list[Example]:
    """Examples where each negative repeats a positive's fillers minus the cue."""
    rng = random.Random(seed)
    config = ContextConfig(0, 0)
    examples = []
    for i in range(n_per_class):
        fillers = rng.choices(FILLERS, k=rng.randint(5, 8))
        pos_words = list(fillers)
        pos_words.insert(rng.randrange(len(pos_words) + 1), CUE)
        examples.append(
            Example(example_id_for("p", i, config), [" ".join(pos_words)], "+", ("p", i))
        )
        examples.append(
            Example(example_id_for("q", i, config), [" ".join(fillers)], "-", ("q", i))
        )
    return examples


def random_clean_corpus(n_docs: int, seed: int) -> list[Document]:
    """Random already-ingested corpus with clean texts and scattered events."""
    rng = random.Random(seed)
    kinds = ("laugh", "applause", "sigh", "cheer", "sob")
    docs = []
    for i in range(n_docs):
        d = f"doc{i:03d}"
        records = []
        for j in range(rng.randint(1, 9)):
            events = [rng.choice(kinds)] if rng.random() < 0.25 else []
            if events and rng.random() < 0.2:
                events.append(rng.choice(kinds))
            records.append(rec(d, j, filler_sentence(rng), events))
        docs.append(Document(d, records))
    return docs

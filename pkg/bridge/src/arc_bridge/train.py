"""Fine-tuning and scoring of the pretrained encoder classifier.

Training follows the standard recipe: Adam with learning rate 2e-5 and
epsilon 1e-8, four epochs (one for a lighter second-stage pass over a
different corpus), binary head on the classification-token embedding.
Batch size 32 and maximum sequence length 128 are configurable
defaults.  With a fixed seed and a fixed thread count, runs are
reproducible up to framework determinism limits.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

import torch

from .data import BridgeExample, read_export, write_scores
from .inputs import prepare_inputs

DEFAULT_MODEL = "bert-base-uncased"


@dataclass
class BridgeConfig:
    export_path: str
    checkpoint_dir: str
    model: str = DEFAULT_MODEL
    learning_rate: float = 2e-5
    adam_epsilon: float = 1e-8
    epochs: int = 4
    batch_size: int = 32
    max_length: int = 128
    seed: int = 13


def _load(model_name_or_path: str):
    from transformers import AutoModelForSequenceClassification, AutoTokenizer

    tokenizer = AutoTokenizer.from_pretrained(model_name_or_path)
    model = AutoModelForSequenceClassification.from_pretrained(
        model_name_or_path, num_labels=2
    )
    return tokenizer, model


def _batches(rows: list[BridgeExample], batch_size: int):
    for start in range(0, len(rows), batch_size):
        yield rows[start : start + batch_size]


def _encode_batch(batch: list[BridgeExample], tokenizer, max_length: int):
    encoded = [prepare_inputs(ex.sentences, tokenizer, max_length) for ex in batch]
    width = max(len(ids) for ids, _ in encoded)
    pad = tokenizer.pad_token_id or 0
    input_ids = torch.full((len(batch), width), pad, dtype=torch.long)
    attention = torch.zeros((len(batch), width), dtype=torch.long)
    for i, (ids, mask) in enumerate(encoded):
        input_ids[i, : len(ids)] = torch.tensor(ids, dtype=torch.long)
        attention[i, : len(mask)] = torch.tensor(mask, dtype=torch.long)
    return input_ids, attention


def finetune(config: BridgeConfig) -> Path:
    """Train on the export's train split and save a checkpoint directory."""
    rows = [ex for ex in read_export(config.export_path) if ex.split == "train"]
    labels_present = {ex.label for ex in rows}
    if labels_present != {0, 1}:
        raise ValueError(
            f"train split must contain both classes, found labels {sorted(labels_present)}"
        )
    torch.manual_seed(config.seed)
    rng = random.Random(config.seed)

    tokenizer, model = _load(config.model)
    model.train()
    optimizer = torch.optim.Adam(
        model.parameters(), lr=config.learning_rate, eps=config.adam_epsilon
    )
    for _ in range(config.epochs):
        order = list(rows)
        rng.shuffle(order)
        for batch in _batches(order, config.batch_size):
            input_ids, attention = _encode_batch(batch, tokenizer, config.max_length)
            targets = torch.tensor([ex.label for ex in batch], dtype=torch.long)
            output = model(input_ids=input_ids, attention_mask=attention, labels=targets)
            optimizer.zero_grad()
            output.loss.backward()
            optimizer.step()

    checkpoint = Path(config.checkpoint_dir)
    checkpoint.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(checkpoint)
    tokenizer.save_pretrained(checkpoint)
    return checkpoint


def score(
    checkpoint_dir: str,
    export_path: str,
    scores_path: str,
    batch_size: int = 32,
    max_length: int = 128,
) -> int:
    """Score the export's test split; returns the number of rows written."""
    rows = [ex for ex in read_export(export_path) if ex.split == "test"]
    if not rows:
        raise ValueError(f"{export_path}: export has no test split")
    tokenizer, model = _load(checkpoint_dir)
    model.eval()
    out_rows = []
    with torch.no_grad():
        for batch in _batches(rows, batch_size):
            input_ids, attention = _encode_batch(batch, tokenizer, max_length)
            logits = model(input_ids=input_ids, attention_mask=attention).logits
            positive = torch.softmax(logits, dim=-1)[:, 1]
            for ex, prob in zip(batch, positive.tolist()):
                out_rows.append((ex.example_id, min(max(prob, 0.0), 1.0), ex.label))
    write_scores(out_rows, scores_path)
    return len(out_rows)

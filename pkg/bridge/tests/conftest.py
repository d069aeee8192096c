"""Fixtures: fabricated tiny encoder checkpoints for hub-free testing."""

from __future__ import annotations

import pytest

SPECIALS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]


def make_tokenizer(words):
    from transformers import BertTokenizer

    vocab = {tok: i for i, tok in enumerate(SPECIALS + sorted(set(words)))}
    return BertTokenizer(vocab=vocab, do_lower_case=True)


def make_tiny_model_dir(path, sentences):
    """Save a small randomly initialized encoder + word vocab under path.

    Stands in for a pretrained checkpoint when the model hub is not
    reachable; the training and scoring code paths are identical.
    """
    import torch
    from transformers import BertConfig, BertForSequenceClassification

    words = sorted({w for s in sentences for w in s.lower().split()})
    tokenizer = make_tokenizer(words)
    torch.manual_seed(0)
    config = BertConfig(
        vocab_size=len(tokenizer.get_vocab()),
        hidden_size=64,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=128,
        max_position_embeddings=64,
        num_labels=2,
    )
    model = BertForSequenceClassification(config)
    model.save_pretrained(path)
    tokenizer.save_pretrained(path)
    return path


@pytest.fixture()
def small_tokenizer():
    return make_tokenizer(["the", "cat", "sat", "on", "a", "mat", "dog", "ran", "far"])

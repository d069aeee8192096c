"""Sentence-sequence encoding for the classifier.

A window of sentences becomes one sequence: the classification token
first, then each sentence followed by a separator token, so two
sentences encode as [CLS] s_{t-1} [SEP] s_t [SEP].  When the sequence
exceeds the length budget, whole sentences are dropped oldest-first;
if a single sentence still overflows, its oldest tokens are trimmed
(the classification token and final separator survive).
"""

from __future__ import annotations

from typing import Sequence


def _assemble(sentences: Sequence[str], tokenizer) -> list[int]:
    ids = [tokenizer.cls_token_id]
    for sentence in sentences:
        ids.extend(tokenizer.encode(sentence, add_special_tokens=False))
        ids.append(tokenizer.sep_token_id)
    return ids


def prepare_inputs(
    sentences: Sequence[str], tokenizer, max_length: int = 128
) -> tuple[list[int], list[int]]:
    """Token ids and attention mask for one context window."""
    if not sentences:
        raise ValueError("at least one sentence is required")
    kept = list(sentences)
    ids = _assemble(kept, tokenizer)
    while len(ids) > max_length and len(kept) > 1:
        kept = kept[1:]
        ids = _assemble(kept, tokenizer)
    if len(ids) > max_length:
        ids = [ids[0]] + ids[len(ids) - (max_length - 1) :]
    return ids, [1] * len(ids)

"""Multinomial Naive Bayes over bags of context words.

The baseline classifier: context sentences are concatenated into one
bag of case-folded alphanumeric tokens regardless of window shape
(the model has no notion of sentence order).  Laplace smoothing with
a configurable alpha; the likelihood of an in-vocabulary token w in
class c is (count(w,c) + alpha) / (total_c + alpha * V), so the V
in-vocabulary likelihoods of each class sum to one.  Tokens unseen in
training map to a reserved unknown slot that carries the pure
smoothing mass alpha / (total_c + alpha * V).
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import FormatError, ValidationError

TOKEN_RE = re.compile(r"[^\W_]+")

LABELS = ("+", "-")


def tokenize(text: str) -> list[str]:
    """Case-fold and split on non-alphanumeric runs."""
    return TOKEN_RE.findall(text.lower())


@dataclass(slots=True)
class NbModel:
    """Class priors and smoothed token log-likelihoods.

    ``vocab`` is sorted and token ids are its indices; the reserved
    unknown-token id is ``len(vocab)``, the last column of each
    log-likelihood row.
    """

    alpha: float
    log_prior: dict[str, float]
    vocab: list[str]
    log_likelihood: dict[str, list[float]]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._index = {tok: i for i, tok in enumerate(self.vocab)}

    def token_id(self, token: str) -> int:
        return self._index.get(token, len(self.vocab))


def fit(labeled: Iterable[tuple[Sequence[str], str]], alpha: float = 1.0) -> NbModel:
    """Fit the model from (context sentences, label) pairs.

    Raises ValidationError when only one class is present or alpha is
    not positive.
    """
    if alpha <= 0:
        raise ValidationError(f"smoothing alpha must be positive, got {alpha}")
    counts = {label: Counter() for label in LABELS}
    docs = {label: 0 for label in LABELS}
    for sentences, label in labeled:
        if label not in LABELS:
            raise ValidationError(f"unknown label {label!r}")
        docs[label] += 1
        for sentence in sentences:
            counts[label].update(tokenize(sentence))
    if docs["+"] == 0 or docs["-"] == 0:
        raise ValidationError(
            f"training data must contain both classes (got +:{docs['+']} -:{docs['-']})"
        )
    vocab = sorted(set(counts["+"]) | set(counts["-"]))
    v = len(vocab)
    total_docs = docs["+"] + docs["-"]
    log_prior = {label: math.log(docs[label] / total_docs) for label in LABELS}
    log_likelihood = {}
    for label in LABELS:
        total = sum(counts[label].values())
        denom = total + alpha * v
        row = [math.log((counts[label][tok] + alpha) / denom) for tok in vocab]
        row.append(math.log(alpha / denom) if v else 0.0)
        log_likelihood[label] = row
    return NbModel(alpha, log_prior, vocab, log_likelihood)


def predict_proba(model: NbModel, sentences: Sequence[str]) -> float:
    """Posterior probability of the positive class for a context window."""
    ids = [model.token_id(tok) for sentence in sentences for tok in tokenize(sentence)]
    joint = {}
    for label in LABELS:
        row = model.log_likelihood[label]
        joint[label] = model.log_prior[label] + sum(row[i] for i in ids)
    top = max(joint.values())
    z = sum(math.exp(v - top) for v in joint.values())
    return math.exp(joint["+"] - top) / z


def predict(model: NbModel, sentences: Sequence[str]) -> str:
    """Positive iff the posterior exceeds 0.5; exact ties go negative."""
    return "+" if predict_proba(model, sentences) > 0.5 else "-"


def save_model(model: NbModel, path) -> None:
    payload = {
        "alpha": model.alpha,
        "log_prior": {label: model.log_prior[label] for label in LABELS},
        "vocab": model.vocab,
        "log_likelihood": [model.log_likelihood[label] for label in LABELS],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as out:
        json.dump(payload, out, ensure_ascii=False)
        out.write("\n")


def load_model(path) -> NbModel:
    with open(path, "r", encoding="utf-8") as stream:
        try:
            payload = json.load(stream)
        except json.JSONDecodeError as err:
            raise FormatError(f"{path}: invalid model JSON ({err.msg})") from err
    try:
        alpha = float(payload["alpha"])
        vocab = list(payload["vocab"])
        log_prior = {label: float(payload["log_prior"][label]) for label in LABELS}
        rows = payload["log_likelihood"]
        log_likelihood = {label: [float(x) for x in rows[i]] for i, label in enumerate(LABELS)}
    except (KeyError, IndexError, TypeError, ValueError) as err:
        raise FormatError(f"{path}: model JSON missing or malformed fields") from err
    for label in LABELS:
        if len(log_likelihood[label]) != len(vocab) + 1:
            raise FormatError(f"{path}: likelihood row length does not match vocabulary")
    return NbModel(alpha, log_prior, vocab, log_likelihood)

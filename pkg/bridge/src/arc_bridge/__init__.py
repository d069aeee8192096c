"""Transformer bridge: export JSONL in, scores CSV out."""

__version__ = "0.1.0"

from .data import BridgeExample, read_export, score_label, write_scores  # noqa: F401
from .inputs import prepare_inputs  # noqa: F401
from .train import DEFAULT_MODEL, BridgeConfig, finetune, score  # noqa: F401

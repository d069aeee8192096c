"""Audience-response corpus pipeline.

Builds a corpus of uttered sentences and the audience-response events
between them from subtitle/transcript sources, constructs labeled
context-window datasets, trains a Naive Bayes baseline, and evaluates
scores with UAR, F1, ROC and AUC.
"""

__version__ = "0.1.0"

# Version of the JSONL/CSV file schemas produced and consumed by the CLI.
SCHEMA_VERSION = 1

from .dataset import (  # noqa: F401
    ArcDataset,
    ContextConfig,
    Example,
    balance,
    build_dataset,
    build_positive_examples,
    dataset_stats,
    sample_negative_examples,
    split_train_test,
)
from .errors import FormatError, ValidationError  # noqa: F401
from .ingest import (  # noqa: F401
    DEFAULT_LEXICON,
    RESPONSE_KINDS,
    Document,
    EventAnnotation,
    UtteranceRecord,
    detect_events,
    parse_opus_lines,
    parse_srt,
    parse_ted_transcript,
    read_corpus,
    split_line_at_event,
    strip_noise,
    write_corpus,
)
from .metrics import (  # noqa: F401
    ConfusionCounts,
    MetricsReport,
    RocPoint,
    ScoredExample,
    auc_pairwise_oracle,
    auc_trapezoid,
    confusion_at,
    evaluate,
    f1,
    roc_curve,
    uar,
)
from .naive_bayes import NbModel, fit, predict, predict_proba, tokenize  # noqa: F401

"""Command-line pipeline: ingest -> build -> train -> score -> eval -> export.

Every subcommand is deterministic given its flags (sampling commands
require --seed), so rerunning produces byte-identical outputs.  Exit
codes: 0 success, 1 validation failure in the data, 2 I/O or fatal
parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import SCHEMA_VERSION, __version__
from . import dataset as ds
from . import ingest
from . import metrics
from . import naive_bayes as nb
from .errors import FormatError, ValidationError


def cmd_ingest(args: argparse.Namespace) -> int:
    parsers = {
        "opus-lines": ingest.parse_opus_lines,
        "srt": ingest.parse_srt,
        "ted": ingest.parse_ted_transcript,
    }
    parse = parsers[args.format]
    docs = []
    seen = set()
    for raw_path in args.inputs:
        path = Path(raw_path)
        if not path.is_file():
            raise FormatError(f"{path}: no such file")
        with open(path, "r", encoding="utf-8") as stream:
            doc = parse(stream, path.stem)
        if doc.doc_id in seen:
            raise ValidationError(f"duplicate document id {doc.doc_id!r}")
        seen.add(doc.doc_id)
        docs.append(doc)
    docs.sort(key=lambda d: d.doc_id)
    ingest.write_corpus_file(docs, args.out)
    records = sum(len(d.utterances) for d in docs)
    events = sum(d.events_detected for d in docs)
    warnings = sum(d.warnings for d in docs)
    dropped = sum(d.events_dropped for d in docs)
    print(
        f"ingest: {records} records, {events} events, "
        f"warnings={warnings}, dropped_leading_events={dropped}",
        file=sys.stderr,
    )
    return 0


def cmd_build(args: argparse.Namespace) -> int:
    corpus = ingest.read_corpus_file(args.corpus)
    config = ds.ContextConfig(args.n, args.m)
    dataset = ds.build_dataset(
        corpus,
        config,
        seed=args.seed,
        balance_classes=args.balance,
        ratio=args.split,
        group_by_doc=args.group_by_doc,
    )
    ds.write_dataset_file(dataset, args.out)
    stats_path = Path(args.out).with_suffix(".stats.json")
    ds.write_stats_file(dataset.stats, stats_path)
    for split in ds.SPLITS:
        counts = dataset.stats["examples"][split]
        print(f"{split}: +:{counts['+']} -:{counts['-']}")
    return 0


def _split_examples(dataset: ds.ArcDataset, split: str) -> list[ds.Example]:
    return [ex for ex in dataset.examples if dataset.split_of[ex.example_id] == split]


def cmd_train_nb(args: argparse.Namespace) -> int:
    dataset = ds.read_dataset_file(args.dataset)
    train = _split_examples(dataset, "train")
    if not train:
        raise FormatError(f"{args.dataset}: dataset has no train split")
    model = nb.fit(((ex.context, ex.label) for ex in train), alpha=args.alpha)
    nb.save_model(model, args.model)
    print(f"trained on {len(train)} examples, vocabulary size {len(model.vocab)}")
    return 0


def cmd_score_nb(args: argparse.Namespace) -> int:
    dataset = ds.read_dataset_file(args.dataset)
    test = _split_examples(dataset, "test")
    if not test:
        raise FormatError(f"{args.dataset}: dataset has no test split")
    model = nb.load_model(args.model)
    rows = ((ex.example_id, nb.predict_proba(model, ex.context), ex.label) for ex in test)
    metrics.write_scores(rows, args.scores)
    print(f"scored {len(test)} test examples")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    scored = metrics.read_scores(args.scores)
    report = metrics.evaluate(scored, threshold=args.threshold)
    metrics.write_report(report, args.report)
    metrics.write_roc_csv(report.roc, args.roc)
    print(
        f"uar={report.uar:.4f} f1={report.f1:.4f} auc={report.auc:.4f} "
        f"(r+={report.r_plus:.4f} r-={report.r_minus:.4f}, {report.counts.total} examples)"
    )
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    dataset = ds.read_dataset_file(args.dataset)
    with open(args.out, "w", encoding="utf-8", newline="\n") as out:
        for ex in dataset.examples:
            out.write(
                json.dumps(
                    {
                        "example_id": ex.example_id,
                        "sentences": ex.context,
                        "label": 1 if ex.label == "+" else 0,
                        "split": dataset.split_of[ex.example_id],
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
    print(f"exported {len(dataset.examples)} examples")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arcpipe",
        description="Mine audience-response events from subtitles/transcripts, "
        "build context-window datasets, train and evaluate the Naive Bayes baseline.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {__version__} (schema {SCHEMA_VERSION})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse raw sources into canonical corpus JSONL")
    p.add_argument("--format", required=True, choices=ingest.SOURCE_FORMATS)
    p.add_argument("--in", dest="inputs", required=True, nargs="+", metavar="PATH")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("build", help="build a labeled context-window dataset")
    p.add_argument("--corpus", required=True)
    p.add_argument("--n", type=int, required=True, help="preceding sentences")
    p.add_argument("--m", type=int, required=True, help="following sentences")
    p.add_argument("--balance", action="store_true", help="downsample to equal class sizes")
    p.add_argument("--split", type=float, default=0.8, help="train fraction (default 0.8)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument(
        "--group-by-doc",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="keep each document's examples in one split (default on)",
    )
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("train-nb", help="train the Naive Bayes baseline on the train split")
    p.add_argument("--dataset", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.set_defaults(func=cmd_train_nb)

    p = sub.add_parser("score-nb", help="score the test split with a trained model")
    p.add_argument("--dataset", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--scores", required=True)
    p.set_defaults(func=cmd_score_nb)

    p = sub.add_parser("eval", help="evaluate a scores CSV from any producer")
    p.add_argument("--scores", required=True)
    p.add_argument("--report", required=True)
    p.add_argument("--roc", required=True)
    p.add_argument("--threshold", type=float, default=0.5)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("export", help="emit bridge-ready JSONL from a dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except FormatError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

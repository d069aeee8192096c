"""Bridge seam acceptance: the fine-tuned encoder's scores pass the
pipeline's eval with UAR at least the Naive Bayes UAR on the same data.

Everything crosses process boundaries through the published file
formats only: the pipeline CLI produces the dataset, the NB report and
the export; the bridge consumes the export and emits a scores CSV that
the pipeline CLI evaluates.  The pipeline's own test suite never
imports this package, so severing the bridge leaves it fully
functional.
"""

from __future__ import annotations

import itertools
import json
import random
import subprocess
import sys

import pytest

from arc_bridge.inputs import prepare_inputs
from arc_bridge.train import BridgeConfig, finetune, score

from conftest import make_tiny_model_dir

FILLERS = (
    "well you know that was quite a day out there really never thought about "
    "it this way before now maybe we should just go home and rest for while "
    "the show must keep going on friends come back soon"
).split()


def planted_cue_lines(n_blocks: int, seed: int) -> str:
    """One-utterance-per-line text; the cue marks every event line twice."""
    rng = random.Random(seed)
    wheel = itertools.cycle(FILLERS)

    def filler(cue: bool = False) -> str:
        words = [next(wheel) for _ in range(rng.randint(6, 9))]
        if cue:
            for _ in range(2):
                words.insert(rng.randrange(len(words) + 1), "zonk")
        return " ".join(words)

    lines = []
    for _ in range(n_blocks):
        lines.append(filler())
        lines.append(filler(cue=True) + " [LAUGHTER]")
        lines.append(filler())
        lines.append(filler())
    return "\n".join(lines) + "\n"


def pipeline(*argv: str) -> None:
    result = subprocess.run(
        [sys.executable, "-m", "arcpipe.cli", *argv],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0, result.stderr


@pytest.fixture(scope="module")
def toy_run(tmp_path_factory):
    """Planted-cue corpus through the pipeline CLI: dataset, NB report, export."""
    root = tmp_path_factory.mktemp("seam")
    raw = root / "show.txt"
    raw.write_text(planted_cue_lines(260, seed=9), encoding="utf-8")

    corpus = root / "corpus.jsonl"
    dataset = root / "dataset.jsonl"
    export = root / "export.jsonl"
    nb_model = root / "nb_model.json"
    nb_scores = root / "nb_scores.csv"
    nb_report = root / "nb_report.json"

    pipeline("ingest", "--format", "opus-lines", "--in", str(raw), "--out", str(corpus))
    pipeline("build", "--corpus", str(corpus), "--n", "1", "--m", "0", "--balance",
             "--split", "0.8", "--seed", "5", "--no-group-by-doc", "--out", str(dataset))
    pipeline("train-nb", "--dataset", str(dataset), "--model", str(nb_model))
    pipeline("score-nb", "--dataset", str(dataset), "--model", str(nb_model),
             "--scores", str(nb_scores))
    pipeline("eval", "--scores", str(nb_scores), "--report", str(nb_report),
             "--roc", str(root / "nb_roc.csv"))
    pipeline("export", "--dataset", str(dataset), "--out", str(export))
    return root


def read_jsonl(path):
    return [json.loads(line) for line in path.read_text().splitlines()]


class TestSeam:
    def test_bridge_matches_or_beats_nb_via_pipeline_eval(self, toy_run):
        export = toy_run / "export.jsonl"
        rows = read_jsonl(export)
        assert 450 <= len(rows) <= 600  # the agreed toy scale

        sentences = [s for row in rows for s in row["sentences"]]
        base = make_tiny_model_dir(toy_run / "base_model", sentences)
        checkpoint = finetune(
            BridgeConfig(
                export_path=str(export),
                checkpoint_dir=str(toy_run / "checkpoint"),
                model=str(base),
                learning_rate=5e-4,  # blank-slate tiny encoder needs more than 2e-5
                epochs=8,
                batch_size=32,
                max_length=64,
                seed=3,
            )
        )
        bridge_scores = toy_run / "bridge_scores.csv"
        written = score(str(checkpoint), str(export), str(bridge_scores), max_length=64)
        assert written == sum(1 for row in rows if row["split"] == "test")

        bridge_report_path = toy_run / "bridge_report.json"
        pipeline("eval", "--scores", str(bridge_scores),
                 "--report", str(bridge_report_path), "--roc", str(toy_run / "bridge_roc.csv"))
        bridge_report = json.loads(bridge_report_path.read_text())
        nb_report = json.loads((toy_run / "nb_report.json").read_text())
        assert bridge_report["uar"] >= nb_report["uar"]

    def test_scores_stay_in_range_and_labels_roundtrip(self, toy_run):
        import csv

        export_rows = {row["example_id"]: row for row in read_jsonl(toy_run / "export.jsonl")}
        with open(toy_run / "bridge_scores.csv", newline="") as stream:
            table = list(csv.reader(stream))
        assert table[0] == ["example_id", "score", "label"]
        for example_id, raw_score, label in table[1:]:
            assert 0.0 <= float(raw_score) <= 1.0
            assert label == ("+" if export_rows[example_id]["label"] == 1 else "-")

    def test_prepare_inputs_token_layout(self, toy_run):
        from transformers import AutoTokenizer

        tokenizer = AutoTokenizer.from_pretrained(toy_run / "checkpoint")
        ids, _ = prepare_inputs(["well you know", "come back soon"], tokenizer)
        tokens = tokenizer.convert_ids_to_tokens(ids)
        assert tokens == [
            "[CLS]", "well", "you", "know", "[SEP]", "come", "back", "soon", "[SEP]",
        ]

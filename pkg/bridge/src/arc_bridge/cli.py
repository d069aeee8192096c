"""Bridge CLI: finetune a checkpoint from an export, score the test split."""

from __future__ import annotations

import argparse
import sys

from .train import DEFAULT_MODEL, BridgeConfig, finetune, score


def cmd_finetune(args: argparse.Namespace) -> int:
    config = BridgeConfig(
        export_path=args.export,
        checkpoint_dir=args.checkpoint,
        model=args.model,
        learning_rate=args.lr,
        adam_epsilon=args.eps,
        epochs=args.epochs,
        batch_size=args.batch_size,
        max_length=args.max_length,
        seed=args.seed,
    )
    checkpoint = finetune(config)
    print(f"checkpoint saved to {checkpoint}")
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    written = score(
        args.checkpoint,
        args.export,
        args.scores,
        batch_size=args.batch_size,
        max_length=args.max_length,
    )
    print(f"wrote {written} scores to {args.scores}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arc-bridge",
        description="Fine-tune a pretrained encoder on an export file and "
        "emit a scores CSV for the pipeline's eval command.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("finetune", help="train a classifier checkpoint")
    p.add_argument("--export", required=True)
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--model", default=DEFAULT_MODEL,
                   help="pretrained model id or local directory")
    p.add_argument("--lr", type=float, default=2e-5)
    p.add_argument("--eps", type=float, default=1e-8)
    p.add_argument("--epochs", type=int, default=4)
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--max-length", type=int, default=128)
    p.add_argument("--seed", type=int, default=13)
    p.set_defaults(func=cmd_finetune)

    p = sub.add_parser("score", help="score the test split with a checkpoint")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--export", required=True)
    p.add_argument("--scores", required=True)
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--max-length", type=int, default=128)
    p.set_defaults(func=cmd_score)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Train and serve from the command line."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from frameserve.train import TrainRun, fine_tune


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frameparse-service")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="fine-tune through staged JSONL files in order")
    p.add_argument("stage_files", nargs="+", help="stage JSONL files, pretraining first")
    p.add_argument("--base-model", default="tiny-random",
                   help="'tiny-random' or a checkpoint directory / model id")
    p.add_argument("--out", required=True, help="checkpoint output directory")
    p.add_argument("--learning-rate", type=float, default=1e-3)
    p.add_argument("--batch-size", type=int, default=8)
    p.add_argument("--epochs-per-stage", type=int, default=1)
    p.add_argument("--max-steps-per-stage", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("serve", help="serve a checkpoint over the wire protocol")
    s.add_argument("checkpoint")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8923)
    s.add_argument("--max-concurrent", type=int, default=4)
    return parser


def main() -> None:
    args = build_parser().parse_args()
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "train":
        run = TrainRun(
            base_model=args.base_model,
            stage_files=tuple(args.stage_files),
            output_dir=args.out,
            learning_rate=args.learning_rate,
            batch_size=args.batch_size,
            epochs_per_stage=args.epochs_per_stage,
            max_steps_per_stage=args.max_steps_per_stage,
            seed=args.seed,
        )
        result = fine_tune(run)
        print(json.dumps({
            "checkpoint": str(result.checkpoint),
            "steps": result.steps,
            "first_loss": result.losses[0] if result.losses else None,
            "last_loss": result.losses[-1] if result.losses else None,
        }))
    else:
        from frameserve.serve import serve

        serve(args.checkpoint, host=args.host, port=args.port,
              max_concurrent=args.max_concurrent)


if __name__ == "__main__":
    main()

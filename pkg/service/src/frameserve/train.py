"""Sequential staged fine-tuning.

Stages are consumed strictly in the given order (pretraining corpora
first, the in-domain training set last). Every stage file is fully
schema-validated before the first optimizer step.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from pathlib import Path

import torch

from frameserve.data import SchemaError, load_stage_file
from frameserve.model import TINY_RANDOM, build_model, build_tokenizer, save_checkpoint

log = logging.getLogger("frameserve")

_STAGE_ORDER = {"propbank": 0, "exemplar": 1, "finetune": 2}


@dataclass
class TrainRun:
    """One training run: base model, ordered stage files, optimizer knobs."""

    base_model: str = TINY_RANDOM
    stage_files: tuple[str, ...] = ()
    output_dir: str = "checkpoint"
    learning_rate: float = 1e-3
    batch_size: int = 8
    epochs_per_stage: int = 1
    max_steps_per_stage: int = 0  # 0 = no cap
    max_input_chars: int = 512
    max_target_chars: int = 512
    seed: int = 0

    def __post_init__(self) -> None:
        ranks = []
        for path in self.stage_files:
            stem = Path(path).stem.lower()
            for name, rank in _STAGE_ORDER.items():
                if name in stem:
                    ranks.append(rank)
                    break
        if ranks != sorted(ranks):
            raise ValueError(
                "stage files out of order: pretraining stages (propbank, "
                "exemplar) must precede finetune"
            )


@dataclass
class TrainResult:
    checkpoint: Path
    losses: list[float] = field(default_factory=list)
    steps: int = 0


def _batches(pairs, batch_size, rng):
    order = list(range(len(pairs)))
    rng.shuffle(order)
    for i in range(0, len(order), batch_size):
        yield [pairs[j] for j in order[i : i + batch_size]]


def fine_tune(run: TrainRun) -> TrainResult:
    """Train through the stages sequentially; returns the checkpoint path
    and the per-step loss trace."""
    stages = [load_stage_file(p) for p in run.stage_files]  # aborts on schema errors
    if not any(stages):
        # Nothing to train on: the checkpoint is the base model.
        tokenizer = build_tokenizer()
        model = build_model(run.base_model, run.seed)
        return TrainResult(save_checkpoint(model, tokenizer, run.output_dir))

    torch.manual_seed(run.seed)
    tokenizer = build_tokenizer()
    model = build_model(run.base_model, run.seed)
    model.train()
    optimizer = torch.optim.AdamW(model.parameters(), lr=run.learning_rate)
    rng = random.Random(run.seed)
    losses: list[float] = []
    step = 0
    for stage_idx, pairs in enumerate(stages):
        stage_name = Path(run.stage_files[stage_idx]).stem
        stage_steps = 0
        for epoch in range(run.epochs_per_stage):
            for batch in _batches(pairs, run.batch_size, rng):
                inputs = [i[: run.max_input_chars] for i, _ in batch]
                targets = [t[: run.max_target_chars] or tokenizer.eos_token for _, t in batch]
                enc = tokenizer(inputs, return_tensors="pt", padding=True)
                lab = tokenizer(targets, return_tensors="pt", padding=True)
                label_ids = lab.input_ids.masked_fill(
                    lab.input_ids == tokenizer.pad_token_id, -100
                )
                out = model(
                    input_ids=enc.input_ids,
                    attention_mask=enc.attention_mask,
                    labels=label_ids,
                )
                out.loss.backward()
                optimizer.step()
                optimizer.zero_grad()
                losses.append(out.loss.item())
                step += 1
                stage_steps += 1
                if step % 10 == 0:
                    log.info("step %d (%s): loss %.4f", step, stage_name, losses[-1])
                if run.max_steps_per_stage and stage_steps >= run.max_steps_per_stage:
                    break
            else:
                continue
            break
    model.eval()
    checkpoint = save_checkpoint(model, tokenizer, run.output_dir)
    return TrainResult(checkpoint, losses, step)


def smoothed_window_decrease(losses: list[float], window: int = 10) -> bool:
    """True when the mean of the last window is strictly below the first."""
    if len(losses) < 2 * window:
        raise ValueError(f"need at least {2 * window} steps, got {len(losses)}")
    first = sum(losses[:window]) / window
    last = sum(losses[-window:]) / window
    return last < first

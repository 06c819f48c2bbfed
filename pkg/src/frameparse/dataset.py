"""Staged training-data generation.

Training happens in three stages consumed in order by the trainer:
PropBank records first, then FrameNet exemplars, then the FrameNet
train split. The two pretraining stages never emit trigger tasks
(their sentences annotate a single frame, which would teach the model
to under-mark), while the finetune stage emits all three kinds with
trigger tasks sampled at a higher rate. Replicated samples get
distinct augmentation seeds, so balancing doubles as extra
augmentation coverage.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from frameparse import codec
from frameparse.augment import AugmentConfig, augment_sentence, derive_seed
from frameparse.luindex import LuIndex
from frameparse.model import (
    AnnotatedSentence,
    FrameCatalog,
    TaskRecord,
    ValidationError,
)
from frameparse.tokens import candidates_at

STAGE_IDS = ("propbank", "exemplar", "finetune")

_PRETRAIN_KINDS = ("frame_classification", "arg_extraction")
_ALL_KINDS = ("trigger_id", "frame_classification", "arg_extraction")

DEFAULT_TRIGGER_WEIGHT = 3.0


@dataclass(frozen=True)
class StagePlan:
    """One training stage: corpus, enabled tasks, weights, augmentation."""

    stage: str
    corpus: str
    task_kinds: tuple[str, ...]
    weights: dict[str, float] = field(default_factory=dict)
    augment: AugmentConfig = field(default_factory=AugmentConfig.disabled)
    trigger_augment: AugmentConfig = field(default_factory=AugmentConfig.disabled)
    epochs: int = 1

    def __post_init__(self) -> None:
        if self.stage not in STAGE_IDS:
            raise ValidationError(f"unknown stage {self.stage!r}")
        for kind in self.task_kinds:
            if kind not in _ALL_KINDS:
                raise ValidationError(f"unknown task kind {kind!r}")
        if self.stage in ("propbank", "exemplar") and "trigger_id" in self.task_kinds:
            raise ValidationError(
                f"{self.stage} stage cannot emit trigger_id tasks: its sentences "
                "annotate a single frame and would teach systematic under-marking"
            )
        for kind, w in self.weights.items():
            if w < 0:
                raise ValidationError(f"negative weight for {kind}: {w}")
        if self.epochs < 1:
            raise ValidationError(f"epochs must be >= 1, got {self.epochs}")

    def weight(self, kind: str) -> float:
        return self.weights.get(kind, 1.0)

    def to_dict(self) -> dict:
        return {
            "stage": self.stage,
            "corpus": self.corpus,
            "task_kinds": list(self.task_kinds),
            "weights": dict(self.weights),
            "augment": self.augment.to_dict(),
            "trigger_augment": self.trigger_augment.to_dict(),
            "epochs": self.epochs,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StagePlan":
        return cls(
            stage=data["stage"],
            corpus=data.get("corpus", data["stage"]),
            task_kinds=tuple(data["task_kinds"]),
            weights={k: float(v) for k, v in data.get("weights", {}).items()},
            augment=AugmentConfig.from_dict(data["augment"])
            if "augment" in data
            else AugmentConfig.disabled(),
            trigger_augment=AugmentConfig.from_dict(data["trigger_augment"])
            if "trigger_augment" in data
            else AugmentConfig.disabled(),
            epochs=int(data.get("epochs", 1)),
        )


def default_stage_plans(augment: bool = True) -> list[StagePlan]:
    """The standard three-stage schedule."""
    aug = AugmentConfig.default() if augment else AugmentConfig.disabled()
    trig = AugmentConfig.trigger_default() if augment else AugmentConfig.disabled()
    return [
        StagePlan("propbank", "propbank", _PRETRAIN_KINDS, augment=aug, trigger_augment=trig),
        StagePlan("exemplar", "exemplar", _PRETRAIN_KINDS, augment=aug, trigger_augment=trig),
        StagePlan(
            "finetune",
            "train",
            _ALL_KINDS,
            weights={"trigger_id": DEFAULT_TRIGGER_WEIGHT},
            augment=aug,
            trigger_augment=trig,
        ),
    ]


def _replica_count(weight: float, rng: random.Random) -> int:
    whole = int(weight)
    frac = weight - whole
    if frac > 0 and rng.random() < frac:
        whole += 1
    return whole


def _encode(
    kind: str,
    sentence: AnnotatedSentence,
    catalog: FrameCatalog,
    index: LuIndex,
    augmented: bool,
) -> list[TaskRecord]:
    if kind == "trigger_id":
        return [codec.encode_trigger_task(sentence, augmented=augmented)]
    records = []
    for ann in sentence.annotations:
        if kind == "frame_classification":
            candidates = candidates_at(sentence.text, ann.trigger_start, index)
            records.append(
                codec.encode_frame_task(sentence, ann.trigger_start, candidates, augmented=augmented)
            )
        else:
            frame = catalog.get(ann.frame)
            if frame is None:
                raise codec.CodecError(f"annotation references unknown frame {ann.frame!r}")
            records.append(
                codec.encode_args_task(sentence, ann.trigger_start, frame, augmented=augmented)
            )
    return records


def build_stage(
    plan: StagePlan,
    sentences: Iterable[AnnotatedSentence],
    catalog: FrameCatalog,
    index: LuIndex,
    seed: int,
    diagnostics: list[str] | None = None,
) -> list[TaskRecord]:
    """All task records for one stage, deterministically shuffled.

    Sentences that fail to encode are skipped and reported through
    the diagnostics list.
    """
    ordered = sorted(sentences, key=lambda s: (s.doc_id, s.sentence_id))
    records: list[TaskRecord] = []
    for epoch in range(plan.epochs):
        for sentence in ordered:
            frac_rng = random.Random(derive_seed(seed, sentence.doc_id, sentence.sentence_id, epoch, -1))
            for kind in plan.task_kinds:
                reps = _replica_count(plan.weight(kind), frac_rng)
                config = plan.trigger_augment if kind == "trigger_id" else plan.augment
                for rep in range(reps):
                    aug_seed = derive_seed(seed, sentence.doc_id, sentence.sentence_id, epoch, rep)
                    augmented = augment_sentence(sentence, config, aug_seed)
                    was_augmented = augmented != sentence
                    try:
                        records.extend(_encode(kind, augmented, catalog, index, was_augmented))
                    except codec.CodecError as exc:
                        if diagnostics is not None:
                            diagnostics.append(
                                f"{sentence.doc_id}/{sentence.sentence_id}: {exc}; skipped"
                            )
    random.Random(seed).shuffle(records)
    return records


def balance_sample(
    records: Iterable[TaskRecord],
    weights: dict[str, float],
    rng: random.Random,
) -> list[TaskRecord]:
    """Replicate records per kind-weight; fractional parts are Bernoulli."""
    out: list[TaskRecord] = []
    for record in records:
        weight = weights.get(record.kind, 1.0)
        if weight < 0:
            raise ValidationError(f"negative weight for {record.kind}: {weight}")
        out.extend([record] * _replica_count(weight, rng))
    rng.shuffle(out)
    return out


@dataclass(frozen=True)
class PipelineConfig:
    """Top-level dataset generation config: stages plus a global seed."""

    stages: tuple[StagePlan, ...]
    seed: int = 0

    def to_dict(self) -> dict:
        return {"seed": self.seed, "stages": [s.to_dict() for s in self.stages]}

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        return cls(
            stages=tuple(StagePlan.from_dict(s) for s in data.get("stages", [])),
            seed=int(data.get("seed", 0)),
        )

    @classmethod
    def load(cls, path) -> "PipelineConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")


def iter_task_records(records: Iterable[TaskRecord]) -> Iterator[dict]:
    from frameparse.model import task_to_record

    for record in records:
        yield task_to_record(record)

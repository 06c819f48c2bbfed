"""F1 evaluation for the three subtasks.

Counting rules: a correctly located trigger is a true positive, a
missed location a false negative, a spurious one a false positive.
A misclassified frame at a gold trigger counts as both a false
positive and a false negative. An argument is a true positive only
when its element label and its whitespace-trimmed character span are
both exact; a wrong label or span at an annotated trigger counts as
both fp and fn against its best-overlapping gold element.

Scoring is end-to-end by default: stage 2 and 3 are scored on the
pipeline's own upstream predictions, so errors cascade exactly as
they would in deployment. Gold-stage-input mode exists for ablations.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Sequence

from frameparse import __version__, codec
from frameparse.luindex import LuIndex
from frameparse.model import AnnotatedSentence, FrameCatalog, ParseResult
from frameparse.pipeline import DEFAULT_BATCH_SIZE, Seq2SeqBackend, detect_frames_bulk
from frameparse.tokens import candidates_at

TASKS = ("trigger_id", "frame_classification", "arg_extraction")

_TASK_LABELS = {
    "trigger_id": "Trigger ID",
    "frame_classification": "Frame ID",
    "arg_extraction": "Args ID",
}


@dataclass(frozen=True, slots=True)
class Counts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    def __add__(self, other: "Counts") -> "Counts":
        return Counts(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)

    @property
    def precision(self) -> float:
        denom = self.tp + self.fp
        return self.tp / denom if denom else 0.0

    @property
    def recall(self) -> float:
        denom = self.tp + self.fn
        return self.tp / denom if denom else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0


def score_triggers(gold: set[int], pred: set[int]) -> Counts:
    return Counts(
        tp=len(gold & pred),
        fp=len(pred - gold),
        fn=len(gold - pred),
    )


def score_frames(gold: dict[int, str], pred: dict[int, str]) -> Counts:
    tp = fp = fn = 0
    for off, frame in pred.items():
        if off not in gold:
            fp += 1
        elif gold[off] == frame:
            tp += 1
        else:
            fp += 1
            fn += 1
    fn += sum(1 for off in gold if off not in pred)
    return Counts(tp, fp, fn)


ArgItem = tuple[int, str, str, tuple[int, int]]  # (trigger, frame, element, span)


def _overlap(a: tuple[int, int], b: tuple[int, int]) -> int:
    return max(0, min(a[1], b[1]) - max(a[0], b[0]))


def score_args(gold: set[ArgItem], pred: set[ArgItem]) -> Counts:
    tp = fp = fn = 0
    gold_by_key: dict[tuple[int, str], list[ArgItem]] = {}
    for item in gold:
        gold_by_key.setdefault((item[0], item[1]), []).append(item)

    remaining = {key: list(items) for key, items in gold_by_key.items()}
    # Exact matches first so near-misses cannot steal their gold items.
    for item in sorted(pred):
        key = (item[0], item[1])
        if key in remaining and item in remaining[key]:
            remaining[key].remove(item)
            tp += 1
    for item in sorted(pred):
        key = (item[0], item[1])
        if key not in gold_by_key:
            fp += 1
            continue
        if item in gold_by_key[key]:
            continue  # scored as an exact match above
        pool = remaining.get(key, [])
        if pool:
            # Wrong label or span at an annotated trigger: both fp and
            # fn, consuming the best-overlapping gold element.
            best = max(pool, key=lambda g: (_overlap(g[3], item[3]), -g[3][0]))
            pool.remove(best)
            fp += 1
            fn += 1
        else:
            fp += 1
    fn += sum(len(items) for items in remaining.values())
    return Counts(tp, fp, fn)


def trim_span(text: str, start: int, end: int) -> tuple[int, int]:
    """Shrink a span to exclude surrounding whitespace."""
    while start < end and text[start].isspace():
        start += 1
    while end > start and text[end - 1].isspace():
        end -= 1
    return start, end


@dataclass
class SplitScores:
    trigger_id: Counts = field(default_factory=Counts)
    frame_classification: Counts = field(default_factory=Counts)
    arg_extraction: Counts = field(default_factory=Counts)
    sentences: int = 0

    def counts(self, task: str) -> Counts:
        return getattr(self, task)

    def add(self, task: str, counts: Counts) -> None:
        setattr(self, task, getattr(self, task) + counts)


@dataclass
class Report:
    """Per-task precision/recall/F1 for one or more splits."""

    splits: dict[str, SplitScores] = field(default_factory=dict)
    fingerprint: str = ""

    def to_dict(self) -> dict:
        out: dict = {"fingerprint": self.fingerprint, "splits": {}}
        for name, scores in self.splits.items():
            out["splits"][name] = {}
            for task in TASKS:
                c = scores.counts(task)
                out["splits"][name][task] = {
                    "tp": c.tp,
                    "fp": c.fp,
                    "fn": c.fn,
                    "precision": round(c.precision, 4),
                    "recall": round(c.recall, 4),
                    "f1": round(c.f1, 4),
                }
            out["splits"][name]["sentences"] = scores.sentences
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def render_table(self) -> str:
        """Aligned text table: one row per split, one F1 column per task."""
        headers = ["Split"] + [_TASK_LABELS[t] for t in TASKS] + ["Sentences"]
        rows = []
        for name in sorted(self.splits):
            scores = self.splits[name]
            rows.append(
                [name]
                + [f"{scores.counts(t).f1:.3f}" for t in TASKS]
                + [str(scores.sentences)]
            )
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
                  for i, h in enumerate(headers)]
        def fmt(row):
            return "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        lines = [fmt(headers), fmt(["-" * w for w in widths])]
        lines.extend(fmt(r) for r in rows)
        return "\n".join(lines)


def config_fingerprint(config: dict) -> str:
    payload = json.dumps({"version": __version__, "config": config}, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def _gold_trigger_set(s: AnnotatedSentence) -> set[int]:
    return {a.trigger_start for a in s.annotations}


def _gold_frame_map(s: AnnotatedSentence) -> dict[int, str]:
    return {a.trigger_start: a.frame for a in s.annotations}


def _gold_arg_items(s: AnnotatedSentence) -> set[ArgItem]:
    items: set[ArgItem] = set()
    for a in s.annotations:
        for e in a.elements:
            items.add((a.trigger_start, a.frame, e.element, trim_span(s.text, e.start, e.end)))
    return items


def _pred_items(result: ParseResult):
    triggers = {f.trigger_start for f in result.frames}
    frames = {f.trigger_start: f.frame_name for f in result.frames}
    args: set[ArgItem] = set()
    for f in result.frames:
        for e in f.elements:
            args.add(
                (f.trigger_start, f.frame_name, e.element, trim_span(result.text, e.start, e.end))
            )
    return triggers, frames, args


def score_sentence(s: AnnotatedSentence, result: ParseResult) -> SplitScores:
    pred_triggers, pred_frames, pred_args = _pred_items(result)
    scores = SplitScores(sentences=1)
    scores.add("trigger_id", score_triggers(_gold_trigger_set(s), pred_triggers))
    scores.add("frame_classification", score_frames(_gold_frame_map(s), pred_frames))
    scores.add("arg_extraction", score_args(_gold_arg_items(s), pred_args))
    return scores


def _predict_end_to_end(sentences, backend, catalog, index, batch_size) -> list[ParseResult]:
    # Stage-1 predictions come from the trigger task alone; the
    # pipeline handles the full cascade.
    return detect_frames_bulk(
        [s.text for s in sentences], backend, catalog, index, batch_size
    )


def _score_gold_inputs(
    sentences, backend, catalog, index, batch_size
) -> SplitScores:
    """Ablation mode: each stage receives gold upstream inputs, so the
    three tasks are scored independently instead of cascading."""
    totals = SplitScores()
    for s in sentences:
        totals.sentences += 1
        trig_out = backend.generate_batch([codec.trigger_input(s.text)])[0]
        offsets, _ = codec.decode_trigger_output(s.text, trig_out)
        totals.add("trigger_id", score_triggers(_gold_trigger_set(s), set(offsets)))

        pred_frames: dict[int, str] = {}
        pred_args: set[ArgItem] = set()
        for ann in s.annotations:
            candidates = candidates_at(s.text, ann.trigger_start, index)
            frame_out = backend.generate_batch(
                [codec.frame_input(s.text, ann.trigger_start, candidates)]
            )[0]
            name, _ = codec.decode_frame_output(frame_out, catalog)
            # An undecodable name is still an incorrect classification.
            pred_frames[ann.trigger_start] = name if name is not None else "<invalid>"
            frame = catalog.get(ann.frame)
            if frame is None:
                continue
            args_out = backend.generate_batch(
                [codec.args_input(s.text, ann.trigger_start, frame)]
            )[0]
            spans, _ = codec.decode_args_output(args_out, frame, s.text, ann.trigger_start)
            for e in spans:
                pred_args.add(
                    (ann.trigger_start, ann.frame, e.element, trim_span(s.text, e.start, e.end))
                )
        totals.add("frame_classification", score_frames(_gold_frame_map(s), pred_frames))
        totals.add("arg_extraction", score_args(_gold_arg_items(s), pred_args))
    return totals


def evaluate_split(
    sentences: Sequence[AnnotatedSentence],
    catalog: FrameCatalog,
    index: LuIndex,
    backend: Seq2SeqBackend,
    split_name: str = "dev",
    batch_size: int = DEFAULT_BATCH_SIZE,
    gold_stage_inputs: bool = False,
    report: Report | None = None,
    config: dict | None = None,
) -> Report:
    """Score one split and merge the totals into a report."""
    if report is None:
        report = Report(fingerprint=config_fingerprint(config or {}))
    if gold_stage_inputs:
        totals = _score_gold_inputs(sentences, backend, catalog, index, batch_size)
    else:
        results = _predict_end_to_end(sentences, backend, catalog, index, batch_size)
        totals = SplitScores()
        for s, result in zip(sentences, results):
            per_sentence = score_sentence(s, result)
            for task in TASKS:
                totals.add(task, per_sentence.counts(task))
            totals.sentences += 1
    report.splits[split_name] = totals
    return report

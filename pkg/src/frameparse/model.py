"""Domain types shared by every stage of the toolkit.

All types are immutable after construction and validate their own
invariants, so anything that survives construction is safe to hand to
the codec, the augmenters and the evaluator without re-checking spans.
Character offsets are the canonical span representation; token indices
are always derived on the fly and never stored.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator

SOURCES = ("fulltext", "exemplar", "propbank")

TASK_KINDS = ("trigger_id", "frame_classification", "arg_extraction")

# Prompt prefix per task kind; the codec owns the full grammar.
TASK_PREFIXES = {
    "trigger_id": "TRIGGER",
    "frame_classification": "FRAME",
    "arg_extraction": "ARGS",
}


class FrameParseError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(FrameParseError):
    """A domain value violates one of its invariants."""


@dataclass(frozen=True, slots=True)
class FrameDef:
    """One frame: its name, ordered element names and lexical units."""

    name: str
    elements: tuple[str, ...]
    lexical_units: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.name or any(c.isspace() for c in self.name):
            raise ValidationError(f"frame name must be non-empty and whitespace-free: {self.name!r}")
        seen: set[str] = set()
        for el in self.elements:
            if not el or any(c.isspace() for c in el):
                raise ValidationError(f"frame {self.name}: bad element name {el!r}")
            if el in seen:
                raise ValidationError(f"frame {self.name}: duplicate element {el!r}")
            seen.add(el)
        for lu in self.lexical_units:
            lemma, dot, pos = lu.rpartition(".")
            if not dot or not lemma or not pos:
                raise ValidationError(f"frame {self.name}: LU {lu!r} lacks a final '.pos' suffix")


class FrameCatalog:
    """All frames keyed by name; lookup is total over contained frames."""

    def __init__(self, frames: Iterable[FrameDef]) -> None:
        self._frames: dict[str, FrameDef] = {}
        for f in frames:
            if f.name in self._frames:
                raise ValidationError(f"duplicate frame name {f.name!r}")
            self._frames[f.name] = f

    def __contains__(self, name: str) -> bool:
        return name in self._frames

    def __len__(self) -> int:
        return len(self._frames)

    def __iter__(self) -> Iterator[FrameDef]:
        return iter(self._frames.values())

    def get(self, name: str) -> FrameDef | None:
        return self._frames.get(name)

    def names(self) -> list[str]:
        return sorted(self._frames)


@dataclass(frozen=True, slots=True)
class ElementSpan:
    """A frame-element mention as a [start, end) character span."""

    element: str
    start: int
    end: int

    def __post_init__(self) -> None:
        if not self.element:
            raise ValidationError("element name must be non-empty")
        if not (0 <= self.start < self.end):
            raise ValidationError(f"bad span [{self.start}, {self.end}) for element {self.element!r}")


@dataclass(frozen=True, slots=True)
class FrameAnnotation:
    """One evoked frame: trigger span plus its element spans."""

    frame: str
    trigger_start: int
    trigger_end: int
    elements: tuple[ElementSpan, ...] = ()

    def __post_init__(self) -> None:
        if not (0 <= self.trigger_start < self.trigger_end):
            raise ValidationError(
                f"bad trigger span [{self.trigger_start}, {self.trigger_end}) for frame {self.frame!r}"
            )


@dataclass(frozen=True, slots=True)
class AnnotatedSentence:
    """A sentence with its gold frame annotations.

    Invariants enforced here: all spans lie inside the text, trigger
    offsets are distinct across annotations, and exemplar-source
    sentences carry exactly one annotation.
    """

    text: str
    annotations: tuple[FrameAnnotation, ...]
    doc_id: str
    sentence_id: str
    source: str

    def __post_init__(self) -> None:
        if self.source not in SOURCES:
            raise ValidationError(f"unknown source {self.source!r}")
        if self.source == "exemplar" and len(self.annotations) != 1:
            raise ValidationError(
                f"exemplar sentence {self.doc_id}/{self.sentence_id} has "
                f"{len(self.annotations)} annotations, expected exactly 1"
            )
        n = len(self.text)
        starts: set[int] = set()
        for ann in self.annotations:
            if ann.trigger_end > n:
                raise ValidationError(
                    f"trigger span [{ann.trigger_start}, {ann.trigger_end}) outside text of length {n}"
                )
            if ann.trigger_start in starts:
                raise ValidationError(f"duplicate trigger offset {ann.trigger_start}")
            starts.add(ann.trigger_start)
            for span in ann.elements:
                if span.end > n:
                    raise ValidationError(
                        f"element {span.element!r} span [{span.start}, {span.end}) "
                        f"outside text of length {n}"
                    )


@dataclass(frozen=True, slots=True)
class Provenance:
    """Where a task record came from."""

    doc_id: str
    sentence_id: str
    source: str
    augmented: bool = False


@dataclass(frozen=True, slots=True)
class TaskRecord:
    """One seq2seq sample: task kind, prompt, expected output."""

    kind: str
    input: str
    target: str
    provenance: Provenance

    def __post_init__(self) -> None:
        if self.kind not in TASK_KINDS:
            raise ValidationError(f"unknown task kind {self.kind!r}")
        prefix = TASK_PREFIXES[self.kind]
        if not self.input.startswith(prefix):
            raise ValidationError(f"{self.kind} input must start with {prefix!r}")
        if ": " not in self.input:
            raise ValidationError("task input lacks the ': ' separator")


@dataclass(frozen=True, slots=True)
class DetectedFrame:
    """One frame found by the pipeline, with extracted element spans."""

    trigger_start: int
    trigger_end: int
    frame_name: str
    elements: tuple[ElementSpan, ...] = ()


@dataclass(frozen=True, slots=True)
class ParseResult:
    """Pipeline output for one sentence. Diagnostics never abort a parse."""

    text: str
    frames: tuple[DetectedFrame, ...] = ()
    diagnostics: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.text)
        for f in self.frames:
            if not (0 <= f.trigger_start < f.trigger_end <= n):
                raise ValidationError(f"detected trigger span outside text: {f}")
            for span in f.elements:
                if span.end > n:
                    raise ValidationError(f"detected element span outside text: {span}")


# -- JSONL (de)serialization --
#
# The normalized sentence schema doubles as the PropBank record format:
# {"text", "doc_id", "sentence_id", "source", "annotations": [
#     {"frame", "trigger": [start, end], "elements": [{"name", "start", "end"}]}]}


def sentence_to_record(s: AnnotatedSentence) -> dict:
    return {
        "text": s.text,
        "doc_id": s.doc_id,
        "sentence_id": s.sentence_id,
        "source": s.source,
        "annotations": [
            {
                "frame": a.frame,
                "trigger": [a.trigger_start, a.trigger_end],
                "elements": [
                    {"name": e.element, "start": e.start, "end": e.end} for e in a.elements
                ],
            }
            for a in s.annotations
        ],
    }


def sentence_from_record(rec: dict, default_source: str = "propbank") -> AnnotatedSentence:
    annotations = tuple(
        FrameAnnotation(
            frame=a["frame"],
            trigger_start=int(a["trigger"][0]),
            trigger_end=int(a["trigger"][1]),
            elements=tuple(
                ElementSpan(e["name"], int(e["start"]), int(e["end"]))
                for e in a.get("elements", ())
            ),
        )
        for a in rec.get("annotations", ())
    )
    return AnnotatedSentence(
        text=rec["text"],
        annotations=annotations,
        doc_id=str(rec.get("doc_id", "")),
        sentence_id=str(rec.get("sentence_id", "")),
        source=rec.get("source", default_source),
    )


def frame_to_record(f: FrameDef) -> dict:
    return {"name": f.name, "elements": list(f.elements), "lexical_units": list(f.lexical_units)}


def frame_from_record(rec: dict) -> FrameDef:
    return FrameDef(rec["name"], tuple(rec["elements"]), tuple(rec["lexical_units"]))


def task_to_record(t: TaskRecord) -> dict:
    return {
        "kind": t.kind,
        "input": t.input,
        "target": t.target,
        "doc_id": t.provenance.doc_id,
        "sentence_id": t.provenance.sentence_id,
        "source": t.provenance.source,
        "augmented": t.provenance.augmented,
    }


def task_from_record(rec: dict) -> TaskRecord:
    return TaskRecord(
        kind=rec["kind"],
        input=rec["input"],
        target=rec["target"],
        provenance=Provenance(
            doc_id=str(rec.get("doc_id", "")),
            sentence_id=str(rec.get("sentence_id", "")),
            source=rec.get("source", "fulltext"),
            augmented=bool(rec.get("augmented", False)),
        ),
    )


def parse_result_to_dict(r: ParseResult) -> dict:
    return {
        "text": r.text,
        "frames": [
            {
                "trigger_start": f.trigger_start,
                "trigger_end": f.trigger_end,
                "frame_name": f.frame_name,
                "elements": [
                    {"name": e.element, "start": e.start, "end": e.end} for e in f.elements
                ],
            }
            for f in r.frames
        ],
        "diagnostics": list(r.diagnostics),
    }


def dumps_record(rec: dict) -> str:
    """One canonical JSONL line (no trailing newline)."""
    return json.dumps(rec, ensure_ascii=False)


def write_jsonl(path, records: Iterable[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(dumps_record(rec) + "\n")


def read_jsonl(path) -> Iterator[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield json.loads(line)

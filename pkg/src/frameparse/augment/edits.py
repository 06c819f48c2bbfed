"""Span-safe text edits.

An edit plan is a sorted list of non-overlapping [start, end) ->
replacement substitutions. Applying a plan remaps every trigger and
element offset: positions after an edit shift by the length delta,
same-length substitutions keep interior positions fixed, and spans
overlapping a length-changing edit stretch or shrink to cover the
replaced region. A span strictly inside a deletion is dropped with a
warning; annotations whose trigger is dropped disappear entirely.
"""
from __future__ import annotations

from dataclasses import dataclass

from frameparse.model import (
    AnnotatedSentence,
    ElementSpan,
    FrameAnnotation,
    FrameParseError,
)


class EditError(FrameParseError):
    """The edit plan is invalid for the given text."""


@dataclass(frozen=True, slots=True)
class Edit:
    start: int
    end: int
    replacement: str

    def __post_init__(self) -> None:
        if not (0 <= self.start <= self.end):
            raise EditError(f"bad edit range [{self.start}, {self.end})")

    @property
    def delta(self) -> int:
        return len(self.replacement) - (self.end - self.start)


def validate_plan(text: str, plan: list[Edit]) -> list[Edit]:
    """Sort the plan and reject out-of-bounds or overlapping edits."""
    plan = sorted(plan, key=lambda e: (e.start, e.end))
    prev_end = 0
    for edit in plan:
        if edit.end > len(text):
            raise EditError(f"edit [{edit.start}, {edit.end}) outside text of length {len(text)}")
        if edit.start < prev_end:
            raise EditError(f"overlapping edit at {edit.start}")
        prev_end = edit.end
    return plan


def apply_text(text: str, plan: list[Edit]) -> str:
    out = []
    prev = 0
    for edit in plan:
        out.append(text[prev:edit.start])
        out.append(edit.replacement)
        prev = edit.end
    out.append(text[prev:])
    return "".join(out)


def map_position(pos: int, plan: list[Edit], is_end: bool) -> int:
    """New offset of a span boundary after the plan is applied."""
    delta = 0
    for edit in plan:
        if pos <= edit.start:
            break
        if pos >= edit.end:
            delta += edit.delta
            continue
        # Strictly inside the edited region.
        if edit.delta == 0 and len(edit.replacement) == edit.end - edit.start:
            return pos + delta
        if is_end:
            return edit.start + delta + len(edit.replacement)
        return edit.start + delta
    return pos + delta


def map_span(start: int, end: int, plan: list[Edit]) -> tuple[int, int] | None:
    """Remapped [start, end) span, or None when the edit erased it."""
    new_start = map_position(start, plan, is_end=False)
    new_end = map_position(end, plan, is_end=True)
    if new_start >= new_end:
        return None
    return new_start, new_end


def apply_edits(s: AnnotatedSentence, plan: list[Edit]) -> tuple[AnnotatedSentence, list[str]]:
    """Apply a plan to a sentence, remapping all annotation offsets.

    Returns the edited sentence plus warnings for every dropped span.
    """
    plan = validate_plan(s.text, plan)
    new_text = apply_text(s.text, plan)
    warnings: list[str] = []
    new_annotations: list[FrameAnnotation] = []
    seen_triggers: set[int] = set()
    for ann in s.annotations:
        trigger = map_span(ann.trigger_start, ann.trigger_end, plan)
        if trigger is None:
            warnings.append(f"edit erased the trigger of {ann.frame}; annotation dropped")
            continue
        if trigger[0] in seen_triggers:
            warnings.append(f"edit merged two triggers at offset {trigger[0]}; annotation dropped")
            continue
        seen_triggers.add(trigger[0])
        new_elements = []
        for span in ann.elements:
            mapped = map_span(span.start, span.end, plan)
            if mapped is None:
                warnings.append(f"edit erased element {span.element} of {ann.frame}")
                continue
            new_elements.append(ElementSpan(span.element, mapped[0], mapped[1]))
        new_annotations.append(
            FrameAnnotation(ann.frame, trigger[0], trigger[1], tuple(new_elements))
        )
    edited = AnnotatedSentence(
        text=new_text,
        annotations=tuple(new_annotations),
        doc_id=s.doc_id,
        sentence_id=s.sentence_id,
        source=s.source,
    )
    return edited, warnings

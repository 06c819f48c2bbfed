"""Encoding of sentences into the three task prompts and decoding of
model output strings back into structured predictions.

Prompt grammar (exact separators matter; golden tests are byte-exact):

    TRIGGER: <text>
    FRAME <candidate frames>: <text with * before the target trigger>
    ARGS <frame> | <element names>: <text with * before the target trigger>

Trigger markers are asterisks inserted immediately before the marked
character; stripping every '*' from a marked text recovers the original
sentence exactly. Decoders are total over untrusted model output: a
malformed string produces diagnostics, never an exception.
"""
from __future__ import annotations

import re

from frameparse.model import (
    AnnotatedSentence,
    ElementSpan,
    FrameCatalog,
    FrameDef,
    FrameParseError,
    Provenance,
    TaskRecord,
)
from frameparse.tokens import Token, token_at, tokenize

MARKER = "*"

# Resynchronization window for aligning noisy model output; characters
# that cannot be realigned beyond this fraction abort the decode.
_RESYNC_WINDOW = 8
_MAX_SKIP_FRACTION = 0.30


class CodecError(FrameParseError):
    """Raised when a sentence cannot be represented in the prompt grammar."""


def _check_text(text: str) -> None:
    if not text:
        raise CodecError("cannot encode an empty sentence")
    if MARKER in text:
        raise CodecError("sentence text contains the trigger marker character '*'")


def mark_triggers(text: str, offsets) -> str:
    """Insert a '*' before the character at each offset (deduplicated)."""
    out = []
    prev = 0
    for off in sorted(set(offsets)):
        if not 0 <= off < len(text):
            raise CodecError(f"trigger offset {off} outside text of length {len(text)}")
        out.append(text[prev:off])
        out.append(MARKER)
        prev = off
    out.append(text[prev:])
    return "".join(out)


def trigger_input(text: str) -> str:
    _check_text(text)
    return f"TRIGGER: {text}"


def frame_input(text: str, trigger_start: int, candidates) -> str:
    _check_text(text)
    return f"FRAME {' '.join(candidates)}: {mark_triggers(text, [trigger_start])}"


def args_input(text: str, trigger_start: int, frame: FrameDef) -> str:
    _check_text(text)
    marked = mark_triggers(text, [trigger_start])
    return f"ARGS {frame.name} | {' '.join(frame.elements)}: {marked}"


def _provenance(s: AnnotatedSentence, augmented: bool = False) -> Provenance:
    return Provenance(s.doc_id, s.sentence_id, s.source, augmented)


def encode_trigger_task(s: AnnotatedSentence, augmented: bool = False) -> TaskRecord:
    """One trigger-identification sample covering every annotation."""
    target = mark_triggers(s.text, [a.trigger_start for a in s.annotations])
    return TaskRecord("trigger_id", trigger_input(s.text), target, _provenance(s, augmented))


def encode_frame_task(
    s: AnnotatedSentence,
    trigger_start: int,
    candidates,
    augmented: bool = False,
) -> TaskRecord:
    """One frame-classification sample for the trigger at trigger_start."""
    target = ""
    for a in s.annotations:
        if a.trigger_start == trigger_start:
            target = a.frame
            break
    return TaskRecord(
        "frame_classification",
        frame_input(s.text, trigger_start, candidates),
        target,
        _provenance(s, augmented),
    )


def encode_args_task(
    s: AnnotatedSentence,
    trigger_start: int,
    frame: FrameDef,
    augmented: bool = False,
) -> TaskRecord:
    """One argument-extraction sample for the trigger at trigger_start."""
    items = []
    for a in s.annotations:
        if a.trigger_start == trigger_start:
            for span in sorted(a.elements, key=lambda e: (e.start, e.end)):
                items.append(f'{span.element}="{s.text[span.start:span.end]}"')
            break
    return TaskRecord(
        "arg_extraction",
        args_input(s.text, trigger_start, frame),
        " | ".join(items),
        _provenance(s, augmented),
    )


def _align(original: str, output: str) -> tuple[list[int], int] | None:
    """Scan output against original, collecting raw marker offsets.

    Returns (marker offsets, skipped char count), or None when greedy
    resynchronization loses more than the tolerated fraction.
    """
    offsets: list[int] = []
    skipped = 0
    i = 0  # position in original
    j = 0  # position in output
    n, m = len(original), len(output)
    while j < m:
        ch = output[j]
        if ch == MARKER:
            if i < n:
                offsets.append(i)
            j += 1
            continue
        if i < n and ch == original[i]:
            i += 1
            j += 1
            continue
        # Mismatch: search a small band ahead on either side for a
        # window that realigns, preferring the smallest skip.
        resynced = False
        for delta in range(1, _RESYNC_WINDOW + 1):
            win = output[j + delta : j + delta + _RESYNC_WINDOW].replace(MARKER, "")
            if win and original[i : i + len(win)] == win:
                j += delta
                skipped += delta
                resynced = True
                break
            win = output[j : j + _RESYNC_WINDOW].replace(MARKER, "")
            if win and original[i + delta : i + delta + len(win)] == win:
                i += delta
                skipped += delta
                resynced = True
                break
        if not resynced:
            skipped += 1
            j += 1
    if skipped > _MAX_SKIP_FRACTION * max(n, 1):
        return None
    return offsets, skipped


def decode_trigger_output(original_text: str, model_output: str) -> tuple[list[int], list[str]]:
    """Marker offsets recovered from model output, snapped to token starts.

    Returns (sorted unique offsets, diagnostics). Untrusted input never
    raises; unalignable output yields an empty list plus a diagnostic.
    """
    diagnostics: list[str] = []
    aligned = _align(original_text, model_output)
    if aligned is None:
        return [], ["trigger output could not be aligned to the input text"]
    raw_offsets, skipped = aligned
    if skipped:
        diagnostics.append(f"trigger output misaligned; resynchronized past {skipped} chars")
    tokens = tokenize(original_text)
    snapped: set[int] = set()
    for off in raw_offsets:
        tok = token_at(tokens, off)
        if tok is None:
            diagnostics.append(f"marker at offset {off} not inside any token; dropped")
            continue
        if off != tok.core_start:
            diagnostics.append(f"marker at offset {off} snapped to token start {tok.core_start}")
        snapped.add(tok.core_start)
    return sorted(snapped), diagnostics


def decode_frame_output(model_output: str, catalog: FrameCatalog) -> tuple[str | None, list[str]]:
    """Frame name accepted from model output, or None with a diagnostic."""
    name = model_output.strip()
    if not name:
        return None, ["empty frame classification output"]
    if name in catalog:
        return name, []
    lowered = name.lower()
    matches = [f.name for f in catalog if f.name.lower() == lowered]
    if len(matches) == 1:
        return matches[0], [f"frame name {name!r} matched case-insensitively as {matches[0]!r}"]
    return None, [f"unknown frame name {name!r} in model output"]


_ITEM_RE = re.compile(r'^(?P<element>\S+)="(?P<text>.*)"$', re.DOTALL)


def _locate_span(text: str, needle: str, trigger_start: int) -> tuple[int, int] | None:
    """Occurrence of needle whose start is nearest the trigger (ties: leftmost)."""
    starts = []
    pos = text.find(needle)
    while pos != -1:
        starts.append(pos)
        pos = text.find(needle, pos + 1)
    if not starts:
        return None
    best = min(starts, key=lambda p: (abs(p - trigger_start), p))
    return best, best + len(needle)


def decode_args_output(
    model_output: str,
    frame: FrameDef,
    original_text: str,
    trigger_start: int,
) -> tuple[list[ElementSpan], list[str]]:
    """Element spans parsed from model output; malformed items are dropped."""
    spans: list[ElementSpan] = []
    diagnostics: list[str] = []
    stripped = model_output.strip()
    if not stripped:
        return spans, diagnostics
    for item in stripped.split(" | "):
        m = _ITEM_RE.match(item.strip())
        if m is None:
            diagnostics.append(f"unparseable argument item {item!r}")
            continue
        element = m.group("element")
        arg_text = m.group("text")
        if element not in frame.elements:
            diagnostics.append(f"element {element!r} not defined by frame {frame.name}")
            continue
        located = None
        if arg_text:
            located = _locate_span(original_text, arg_text, trigger_start)
            if located is None and arg_text.strip() and arg_text.strip() != arg_text:
                located = _locate_span(original_text, arg_text.strip(), trigger_start)
        if located is None:
            diagnostics.append(f"argument text {arg_text!r} not found in sentence")
            continue
        spans.append(ElementSpan(element, located[0], located[1]))
    return spans, diagnostics

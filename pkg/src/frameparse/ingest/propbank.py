"""Normalized PropBank record ingestion.

Raw OntoNotes/EWT parsing is out of scope (licensing); records arrive
in the neutral JSONL sentence schema with rolesets as frame names and
argument labels as element names. A synthetic catalog is derived from
the records themselves so downstream hint lookups work unchanged:
roleset ids like "sell.01" already satisfy the lemma.pos LU shape.
"""
from __future__ import annotations

import json
from pathlib import Path

from frameparse.ingest.framenet import IngestError, IngestReport
from frameparse.model import (
    AnnotatedSentence,
    FrameCatalog,
    FrameDef,
    ValidationError,
    sentence_from_record,
)


def load_propbank_records(path) -> tuple[list[AnnotatedSentence], FrameCatalog, IngestReport]:
    """Read JSONL records; malformed lines are skipped with a warning."""
    path = Path(path)
    report = IngestReport()
    if not path.is_file():
        raise IngestError(f"PropBank record file not found: {path}")
    sentences: list[AnnotatedSentence] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                rec["source"] = "propbank"
                sentence = sentence_from_record(rec)
            except (json.JSONDecodeError, KeyError, TypeError, IndexError, ValidationError) as exc:
                report.warn(f"{path.name}:{lineno}: malformed record skipped ({exc})")
                report.rejected_sentences += 1
                continue
            if "*" in sentence.text:
                report.warn(f"{path.name}:{lineno}: text contains '*'; skipped")
                report.rejected_sentences += 1
                continue
            report.sentences += 1
            report.annotations += len(sentence.annotations)
            sentences.append(sentence)
    catalog = derive_roleset_catalog(sentences)
    return sentences, catalog, report


def derive_roleset_catalog(sentences) -> FrameCatalog:
    """Synthetic catalog: one frame per roleset, elements = observed labels."""
    elements: dict[str, set[str]] = {}
    for s in sentences:
        for ann in s.annotations:
            bucket = elements.setdefault(ann.frame, set())
            for span in ann.elements:
                bucket.add(span.element)
    frames = []
    for roleset in sorted(elements):
        lu = roleset if "." in roleset else f"{roleset}.v"
        frames.append(FrameDef(roleset, tuple(sorted(elements[roleset])), (lu,)))
    return FrameCatalog(frames)

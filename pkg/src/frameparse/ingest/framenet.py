"""Readers for the FrameNet 1.7 distribution layout.

Expected tree (subset):

    frameIndex.xml          index of frame names
    frame/<Name>.xml        one frame definition per file
    fulltext/<Doc>.xml      fully annotated documents
    lu/lu<ID>.xml           per-LU exemplar annotations

Annotation label offsets in the XML are inclusive on both ends; they
are converted to [start, end) character spans here. Sentences whose
offsets disagree with their text are rejected rather than repaired,
and the rejection is counted in the ingest report.
"""
from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from frameparse.model import (
    AnnotatedSentence,
    ElementSpan,
    FrameAnnotation,
    FrameCatalog,
    FrameDef,
    FrameParseError,
    ValidationError,
)

_NS = "{http://framenet.icsi.berkeley.edu}"


class IngestError(FrameParseError):
    """Fatal problem with corpus files (missing directory, bad XML)."""


@dataclass
class IngestReport:
    """Counts and warnings accumulated while reading corpus files."""

    sentences: int = 0
    annotations: int = 0
    rejected_sentences: int = 0
    dropped_annotations: int = 0
    warnings: list[str] = field(default_factory=list)

    def warn(self, message: str) -> None:
        self.warnings.append(message)

    def to_dict(self) -> dict:
        return {
            "sentences": self.sentences,
            "annotations": self.annotations,
            "rejected_sentences": self.rejected_sentences,
            "dropped_annotations": self.dropped_annotations,
            "warnings": list(self.warnings),
        }


def _tag(elem: ET.Element) -> str:
    """Element tag with the FrameNet namespace stripped."""
    return elem.tag.split("}")[-1]


def _iter_children(elem: ET.Element, name: str):
    for child in elem:
        if _tag(child) == name:
            yield child


def _find_child(elem: ET.Element, name: str) -> ET.Element | None:
    for child in elem:
        if _tag(child) == name:
            return child
    return None


def _parse_xml(path: Path) -> ET.Element:
    try:
        return ET.parse(path).getroot()
    except ET.ParseError as exc:
        raise IngestError(f"malformed XML in {path}: {exc}") from exc


def _frame_from_file(path: Path) -> FrameDef:
    root = _parse_xml(path)
    if _tag(root) != "frame":
        raise IngestError(f"{path} is not a frame definition file")
    name = root.get("name")
    if not name:
        raise IngestError(f"{path} has no frame name")
    elements = [fe.get("name") for fe in _iter_children(root, "FE")]
    lus = [lu.get("name") for lu in _iter_children(root, "lexUnit")]
    try:
        return FrameDef(name, tuple(elements), tuple(lus))
    except ValidationError as exc:
        raise IngestError(f"invalid frame definition in {path}: {exc}") from exc


def load_frame_catalog(framenet_dir) -> tuple[FrameCatalog, IngestReport]:
    """Read frame/*.xml into a catalog, element order preserved."""
    root = Path(framenet_dir)
    report = IngestReport()
    if not root.is_dir():
        raise IngestError(f"FrameNet directory not found: {root}")
    frame_dir = root / "frame"
    if not frame_dir.is_dir():
        raise IngestError(f"missing frame definition directory: {frame_dir}")
    paths = sorted(frame_dir.glob("*.xml"))
    index_file = root / "frameIndex.xml"
    if index_file.exists():
        listed = {
            f.get("name")
            for f in _parse_xml(index_file).iter()
            if _tag(f) == "frame" and f.get("name")
        }
        found = {p.stem for p in paths}
        for missing in sorted(listed - found):
            report.warn(f"frame {missing!r} listed in frameIndex.xml but has no file")
    frames = [_frame_from_file(p) for p in paths]
    if not frames:
        report.warn(f"no frame definition files under {frame_dir}")
    return FrameCatalog(frames), report


def _spans_from_layer(layer: ET.Element) -> list[tuple[int, int, str]]:
    """(start, end exclusive, name) for each located label in a layer."""
    spans = []
    for label in _iter_children(layer, "label"):
        if label.get("itype"):
            continue  # null instantiation: no text span
        start, end = label.get("start"), label.get("end")
        if start is None or end is None:
            continue
        spans.append((int(start), int(end) + 1, label.get("name", "")))
    return spans


def _annotation_from_set(
    aset: ET.Element,
    frame_name: str,
    text: str,
    where: str,
    report: IngestReport,
) -> FrameAnnotation | None:
    targets: list[tuple[int, int, str]] = []
    elements: list[ElementSpan] = []
    for layer in _iter_children(aset, "layer"):
        name = layer.get("name")
        rank = layer.get("rank", "1")
        if name == "Target":
            targets.extend(_spans_from_layer(layer))
        elif name == "FE":
            if rank != "1":
                if _spans_from_layer(layer):
                    report.warn(f"{where}: dropped rank-{rank} (discontinuous) FE layer")
                continue
            for start, end, el_name in _spans_from_layer(layer):
                if end > len(text) or start < 0 or start >= end:
                    raise ValidationError(
                        f"element {el_name!r} span [{start}, {end}) outside sentence"
                    )
                elements.append(ElementSpan(el_name, start, end))
    if not targets:
        report.warn(f"{where}: annotation set without a target; dropped")
        return None
    targets.sort()
    if len(targets) > 1:
        report.warn(f"{where}: multi-span target; using the first span")
    start, end, _ = targets[0]
    if end > len(text) or start < 0 or start >= end:
        raise ValidationError(f"trigger span [{start}, {end}) outside sentence")
    elements.sort(key=lambda e: (e.start, e.end, e.element))
    return FrameAnnotation(frame_name, start, end, tuple(elements))


def _sentence_sort_key(s: AnnotatedSentence) -> tuple:
    sid = s.sentence_id
    return (s.doc_id, (0, int(sid)) if sid.isdigit() else (1, sid))


def _build_sentence(
    text: str,
    annotations: list[FrameAnnotation],
    doc_id: str,
    sentence_id: str,
    source: str,
    report: IngestReport,
    where: str,
) -> AnnotatedSentence | None:
    if "*" in text:
        report.warn(f"{where}: text contains '*', unrepresentable in prompts; rejected")
        report.rejected_sentences += 1
        return None
    deduped: list[FrameAnnotation] = []
    seen_starts: set[int] = set()
    for ann in sorted(annotations, key=lambda a: (a.trigger_start, a.trigger_end)):
        if ann.trigger_start in seen_starts:
            report.warn(f"{where}: duplicate trigger offset {ann.trigger_start}; annotation dropped")
            report.dropped_annotations += 1
            continue
        seen_starts.add(ann.trigger_start)
        deduped.append(ann)
    try:
        sentence = AnnotatedSentence(text, tuple(deduped), doc_id, sentence_id, source)
    except ValidationError as exc:
        report.warn(f"{where}: {exc}; sentence rejected")
        report.rejected_sentences += 1
        return None
    report.sentences += 1
    report.annotations += len(deduped)
    return sentence


def load_fulltext(framenet_dir, catalog: FrameCatalog) -> tuple[list[AnnotatedSentence], IngestReport]:
    """Read fulltext/*.xml; annotations with unknown frames are dropped."""
    root = Path(framenet_dir)
    report = IngestReport()
    ft_dir = root / "fulltext"
    if not ft_dir.is_dir():
        raise IngestError(f"missing fulltext directory: {ft_dir}")
    sentences: list[AnnotatedSentence] = []
    for path in sorted(ft_dir.glob("*.xml")):
        doc_id = path.stem
        doc_root = _parse_xml(path)
        for i, sent in enumerate(_iter_children(doc_root, "sentence")):
            sentence_id = sent.get("ID") or str(i)
            where = f"{doc_id}/{sentence_id}"
            text_el = _find_child(sent, "text")
            text = text_el.text if text_el is not None and text_el.text else ""
            if not text:
                report.warn(f"{where}: empty sentence text; rejected")
                report.rejected_sentences += 1
                continue
            annotations: list[FrameAnnotation] = []
            bad_span = False
            for aset in _iter_children(sent, "annotationSet"):
                frame_name = aset.get("frameName")
                if not frame_name or aset.get("status") == "UNANN":
                    continue  # POS-only annotation set
                if frame_name not in catalog:
                    report.warn(f"{where}: unknown frame {frame_name!r}; annotation dropped")
                    report.dropped_annotations += 1
                    continue
                try:
                    ann = _annotation_from_set(aset, frame_name, text, where, report)
                except ValidationError as exc:
                    report.warn(f"{where}: {exc}; sentence rejected")
                    bad_span = True
                    break
                if ann is not None:
                    annotations.append(ann)
            if bad_span:
                report.rejected_sentences += 1
                continue
            built = _build_sentence(text, annotations, doc_id, sentence_id, "fulltext", report, where)
            if built is not None:
                sentences.append(built)
    sentences.sort(key=_sentence_sort_key)
    return sentences, report


def load_exemplars(framenet_dir, catalog: FrameCatalog) -> tuple[list[AnnotatedSentence], IngestReport]:
    """Read lu/*.xml exemplar sentences, one annotation per sentence."""
    root = Path(framenet_dir)
    report = IngestReport()
    lu_dir = root / "lu"
    if not lu_dir.is_dir():
        raise IngestError(f"missing lu directory: {lu_dir}")
    sentences: list[AnnotatedSentence] = []
    for path in sorted(lu_dir.glob("*.xml")):
        lu_root = _parse_xml(path)
        if _tag(lu_root) != "lexUnit":
            report.warn(f"{path.name}: not a lexUnit file; skipped")
            continue
        frame_name = lu_root.get("frame")
        doc_id = path.stem
        if not frame_name:
            report.warn(f"{path.name}: lexUnit without a frame attribute; skipped")
            continue
        if frame_name not in catalog:
            report.warn(f"{path.name}: unknown frame {frame_name!r}; file skipped")
            continue
        for sub in _iter_children(lu_root, "subCorpus"):
            for sent in _iter_children(sub, "sentence"):
                sentence_id = sent.get("ID") or ""
                where = f"{doc_id}/{sentence_id}"
                text_el = _find_child(sent, "text")
                text = text_el.text if text_el is not None and text_el.text else ""
                if not text:
                    report.warn(f"{where}: empty exemplar text; rejected")
                    report.rejected_sentences += 1
                    continue
                annotations: list[FrameAnnotation] = []
                bad_span = False
                for aset in _iter_children(sent, "annotationSet"):
                    if aset.get("status") == "UNANN":
                        continue
                    has_target = any(
                        layer.get("name") == "Target"
                        for layer in _iter_children(aset, "layer")
                    )
                    if not has_target:
                        continue
                    try:
                        ann = _annotation_from_set(aset, frame_name, text, where, report)
                    except ValidationError as exc:
                        report.warn(f"{where}: {exc}; sentence rejected")
                        bad_span = True
                        break
                    if ann is not None:
                        annotations.append(ann)
                if bad_span:
                    report.rejected_sentences += 1
                    continue
                if len(annotations) != 1:
                    report.warn(
                        f"{where}: exemplar with {len(annotations)} annotations; rejected"
                    )
                    report.rejected_sentences += 1
                    continue
                built = _build_sentence(
                    text, annotations, doc_id, sentence_id, "exemplar", report, where
                )
                if built is not None:
                    sentences.append(built)
    sentences.sort(key=_sentence_sort_key)
    return sentences, report

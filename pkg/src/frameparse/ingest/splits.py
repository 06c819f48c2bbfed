"""Document-level train/dev/test partitioning.

Split lists are configuration, not code: the shipped default mirrors
the document lists popularized by the Open Sesame parser for FrameNet
1.7. Exemplar and PropBank sentences always land in train regardless
of their document id.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from frameparse.ingest.framenet import IngestReport
from frameparse.model import AnnotatedSentence, ValidationError


@dataclass(frozen=True)
class SplitConfig:
    dev_docs: tuple[str, ...]
    test_docs: tuple[str, ...]

    def __post_init__(self) -> None:
        overlap = set(self.dev_docs) & set(self.test_docs)
        if overlap:
            raise ValidationError(f"documents in both dev and test: {sorted(overlap)}")


@dataclass(frozen=True)
class SplitSentences:
    train: tuple[AnnotatedSentence, ...]
    dev: tuple[AnnotatedSentence, ...]
    test: tuple[AnnotatedSentence, ...]


def load_split_config(path) -> SplitConfig:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return SplitConfig(tuple(data["dev_docs"]), tuple(data["test_docs"]))


def default_split_config() -> SplitConfig:
    """The bundled Open Sesame FrameNet 1.7 document lists."""
    ref = resources.files("frameparse.data").joinpath("splits/open_sesame_fn17.json")
    data = json.loads(ref.read_text(encoding="utf-8"))
    return SplitConfig(tuple(data["dev_docs"]), tuple(data["test_docs"]))


def split_sentences(
    sentences,
    split: SplitConfig,
    report: IngestReport | None = None,
) -> SplitSentences:
    """Partition by doc_id; non-fulltext sources always go to train."""
    report = report if report is not None else IngestReport()
    doc_ids = {s.doc_id for s in sentences}
    for missing in sorted((set(split.dev_docs) | set(split.test_docs)) - doc_ids):
        report.warn(f"split document {missing!r} not present in the corpus")
    dev_set, test_set = set(split.dev_docs), set(split.test_docs)
    train, dev, test = [], [], []
    for s in sentences:
        if s.source != "fulltext":
            train.append(s)
        elif s.doc_id in dev_set:
            dev.append(s)
        elif s.doc_id in test_set:
            test.append(s)
        else:
            train.append(s)
    return SplitSentences(tuple(train), tuple(dev), tuple(test))

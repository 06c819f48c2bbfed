"""Corpus ingestion: FrameNet 1.7 XML, PropBank records, splits."""
from frameparse.ingest.framenet import (
    IngestError,
    IngestReport,
    load_exemplars,
    load_frame_catalog,
    load_fulltext,
)
from frameparse.ingest.propbank import derive_roleset_catalog, load_propbank_records
from frameparse.ingest.splits import (
    SplitConfig,
    SplitSentences,
    default_split_config,
    load_split_config,
    split_sentences,
)

__all__ = [
    "IngestError",
    "IngestReport",
    "SplitConfig",
    "SplitSentences",
    "default_split_config",
    "derive_roleset_catalog",
    "load_exemplars",
    "load_frame_catalog",
    "load_fulltext",
    "load_propbank_records",
    "load_split_config",
    "split_sentences",
]

"""Frame-semantic parsing toolkit.

Three seq2seq subtasks run in series: trigger identification, frame
classification with lexical-unit hints, and argument extraction. The
package covers corpus ingestion, prompt encoding/decoding, training
data generation with augmentation and balancing, a pluggable inference
backend, and the evaluation harness.
"""
from frameparse.model import (
    AnnotatedSentence,
    DetectedFrame,
    ElementSpan,
    FrameAnnotation,
    FrameCatalog,
    FrameDef,
    FrameParseError,
    ParseResult,
    Provenance,
    TaskRecord,
    ValidationError,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotatedSentence",
    "DetectedFrame",
    "ElementSpan",
    "FrameAnnotation",
    "FrameCatalog",
    "FrameDef",
    "FrameParseError",
    "ParseResult",
    "Provenance",
    "TaskRecord",
    "ValidationError",
    "__version__",
]

"""Task-record JSONL loading with upfront schema validation.

Stage files are validated in full before any training step runs; a
single malformed record aborts the run rather than silently skewing
the set.
"""
from __future__ import annotations

import json
from pathlib import Path

TASK_KINDS = ("trigger_id", "frame_classification", "arg_extraction")

_PREFIXES = {
    "trigger_id": "TRIGGER",
    "frame_classification": "FRAME",
    "arg_extraction": "ARGS",
}


class SchemaError(ValueError):
    """A stage file violates the task-record schema."""


def validate_record(rec: dict, where: str) -> None:
    if not isinstance(rec, dict):
        raise SchemaError(f"{where}: record is not an object")
    kind = rec.get("kind")
    if kind not in TASK_KINDS:
        raise SchemaError(f"{where}: unknown task kind {kind!r}")
    for field in ("input", "target"):
        if not isinstance(rec.get(field), str):
            raise SchemaError(f"{where}: field {field!r} must be a string")
    if not rec["input"].startswith(_PREFIXES[kind]):
        raise SchemaError(f"{where}: input does not start with {_PREFIXES[kind]!r}")
    if ": " not in rec["input"]:
        raise SchemaError(f"{where}: input lacks the ': ' separator")


def load_stage_file(path) -> list[tuple[str, str]]:
    """All (input, target) pairs of one stage file, schema-checked."""
    path = Path(path)
    if not path.is_file():
        raise SchemaError(f"stage file not found: {path}")
    pairs: list[tuple[str, str]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"{path.name}:{lineno}: invalid JSON ({exc})") from exc
            validate_record(rec, f"{path.name}:{lineno}")
            pairs.append((rec["input"], rec["target"]))
    return pairs

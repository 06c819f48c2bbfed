"""Augmenter composition with deterministic seeded randomness.

Augmenters fire independently with their configured probabilities and
compose in a fixed order: quotes, synonyms, random misspelling,
keyboard misspelling, punctuation deletion, case transform. If any
edit would erase a gold span the whole augmented sentence is discarded
and the original is used; training never sees silently corrupted
targets.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field, replace

from frameparse.augment.augmenters import AUGMENTER_IDS, plan_edits
from frameparse.augment.edits import apply_edits
from frameparse.model import AnnotatedSentence, ValidationError

_DEFAULT_PROBABILITY = 0.15
_TRIGGER_PROBABILITY = 0.30
_DEFAULT_CHAR_RATE = 0.05


@dataclass(frozen=True)
class AugmentConfig:
    """Per-augmenter enablement and application probabilities."""

    probabilities: dict[str, float] = field(
        default_factory=lambda: {kind: _DEFAULT_PROBABILITY for kind in AUGMENTER_IDS}
    )
    char_edit_rate: float = _DEFAULT_CHAR_RATE

    def __post_init__(self) -> None:
        for kind, p in self.probabilities.items():
            if kind not in AUGMENTER_IDS:
                raise ValidationError(f"unknown augmenter {kind!r} in config")
            if not 0.0 <= p <= 1.0:
                raise ValidationError(f"probability for {kind} out of [0, 1]: {p}")
        if not 0.0 < self.char_edit_rate <= 1.0:
            raise ValidationError(f"char_edit_rate out of (0, 1]: {self.char_edit_rate}")

    def probability(self, kind: str) -> float:
        return self.probabilities.get(kind, 0.0)

    @classmethod
    def disabled(cls) -> "AugmentConfig":
        return cls(probabilities={kind: 0.0 for kind in AUGMENTER_IDS})

    @classmethod
    def default(cls) -> "AugmentConfig":
        return cls()

    @classmethod
    def trigger_default(cls) -> "AugmentConfig":
        """Boosted rate for trigger-identification samples."""
        return cls(probabilities={kind: _TRIGGER_PROBABILITY for kind in AUGMENTER_IDS})

    def to_dict(self) -> dict:
        return {
            "probabilities": dict(self.probabilities),
            "char_edit_rate": self.char_edit_rate,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AugmentConfig":
        probabilities = {kind: 0.0 for kind in AUGMENTER_IDS}
        probabilities.update(data.get("probabilities", {}))
        return cls(
            probabilities=probabilities,
            char_edit_rate=data.get("char_edit_rate", _DEFAULT_CHAR_RATE),
        )


def derive_seed(global_seed: int, doc_id: str, sentence_id: str, epoch: int, rep: int = 0) -> int:
    """Stable per-record seed, independent of scheduling order."""
    key = f"{global_seed}|{doc_id}|{sentence_id}|{epoch}|{rep}".encode("utf-8")
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def augment_sentence(s: AnnotatedSentence, config: AugmentConfig, seed: int) -> AnnotatedSentence:
    """Apply the enabled augmenters; fully deterministic given the seed."""
    rng = random.Random(seed)
    current = s
    for kind in AUGMENTER_IDS:
        p = config.probability(kind)
        if p <= 0.0 or rng.random() >= p:
            continue
        plan = plan_edits(kind, current.text, current.annotations, rng, config.char_edit_rate)
        if not plan:
            continue
        try:
            edited, warnings = apply_edits(current, plan)
        except ValidationError:
            return s
        if warnings:
            # An edit erased or merged gold spans: discard everything.
            return s
        current = edited
    return current

"""Textual augmentation with span-safe offset remapping."""
from frameparse.augment.augmenters import AUGMENTER_IDS, SYNONYMS, plan_edits
from frameparse.augment.chain import AugmentConfig, augment_sentence, derive_seed
from frameparse.augment.edits import Edit, EditError, apply_edits, map_span

__all__ = [
    "AUGMENTER_IDS",
    "AugmentConfig",
    "Edit",
    "EditError",
    "SYNONYMS",
    "apply_edits",
    "augment_sentence",
    "derive_seed",
    "map_span",
    "plan_edits",
]

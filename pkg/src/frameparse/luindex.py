"""Lexical-unit lookup: word normalization, the inverted index from
normalized forms to frames, and candidate-frame retrieval for triggers.

Every trigger word and every LU lemma is normalized with four
normalizers (Porter, Lancaster, Snowball, lemmatizer) and the distinct
results form its lookup key set. Bigrams of the trigger with each
neighbor are matched against multi-word LUs via underscore-joined
cross-products of the per-word form sets.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from frameparse.model import FrameCatalog, FrameParseError
from frameparse.nlp import lancaster_stem, lemma_forms, porter_stem, snowball_stem

# Characters stripped from token edges before normalization; prompt
# markers ('*') are included so marked tokens normalize cleanly.
_EDGE_PUNCT = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~‘’“”„«»"

NormalFormSet = frozenset[str]

_EMPTY: NormalFormSet = frozenset()


def strip_token(token: str) -> str:
    """Remove leading/trailing punctuation from a whitespace token."""
    return token.strip(_EDGE_PUNCT)


def normalize_word(word: str) -> NormalFormSet:
    """All distinct normalized forms of one word, lowercased."""
    word = word.strip().lower()
    if not word:
        return _EMPTY
    forms = {porter_stem(word), lancaster_stem(word), snowball_stem(word)}
    forms.update(lemma_forms(word))
    forms.discard("")
    return frozenset(forms)


def join_bigram(left: NormalFormSet, right: NormalFormSet) -> NormalFormSet:
    """Underscore-joined cross-product of two form sets."""
    if not left or not right:
        return _EMPTY
    return frozenset(f"{a}_{b}" for a in left for b in right)


def normalize_lu(lu: str) -> NormalFormSet:
    """Normalized forms of a lexical unit, POS tag removed.

    Multi-word lemmas produce underscore-joined cross-products so they
    can match trigger bigrams.
    """
    lemma, dot, _pos = lu.rpartition(".")
    if not dot or not lemma:
        raise FrameParseError(f"lexical unit {lu!r} lacks a '.pos' suffix")
    words = lemma.split()
    form_sets = [normalize_word(w) for w in words]
    form_sets = [fs for fs in form_sets if fs]
    if not form_sets:
        return _EMPTY
    joined = form_sets[0]
    for fs in form_sets[1:]:
        joined = join_bigram(joined, fs)
    return joined


class LuIndex:
    """Inverted index: normalized form -> frame names."""

    def __init__(self, entries: dict[str, frozenset[str]]) -> None:
        self._entries = entries

    def __len__(self) -> int:
        return len(self._entries)

    def frames_for(self, form: str) -> frozenset[str]:
        return self._entries.get(form, frozenset())

    def forms(self) -> list[str]:
        return sorted(self._entries)

    def lookup(self, forms: Iterable[str]) -> list[str]:
        """Union of hits over a lookup set, sorted lexicographically."""
        hits: set[str] = set()
        for form in forms:
            hits.update(self._entries.get(form, ()))
        return sorted(hits)

    def dump(self, path) -> None:
        """Write the index as sorted "form<TAB>frame1,frame2,..." lines."""
        with open(path, "w", encoding="utf-8") as fh:
            for form in sorted(self._entries):
                fh.write(f"{form}\t{','.join(sorted(self._entries[form]))}\n")

    @classmethod
    def load(cls, path) -> "LuIndex":
        entries: dict[str, frozenset[str]] = {}
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line:
                    continue
                form, _, frames = line.partition("\t")
                entries[form] = frozenset(frames.split(","))
        return cls(entries)


def build_index(catalog: FrameCatalog) -> LuIndex:
    """Index every normalized form of every LU of every frame."""
    entries: dict[str, set[str]] = {}
    for frame in catalog:
        for lu in frame.lexical_units:
            for form in normalize_lu(lu):
                entries.setdefault(form, set()).add(frame.name)
    return LuIndex({form: frozenset(names) for form, names in entries.items()})


def trigger_lookup_set(tokens: Sequence[str], trigger_index: int) -> NormalFormSet:
    """Monogram forms of the trigger plus bigram forms with each neighbor."""
    if not (0 <= trigger_index < len(tokens)):
        raise IndexError(f"trigger index {trigger_index} out of range")
    trigger_forms = normalize_word(strip_token(tokens[trigger_index]))
    forms = set(trigger_forms)
    if trigger_index > 0:
        left = normalize_word(strip_token(tokens[trigger_index - 1]))
        forms.update(join_bigram(left, trigger_forms))
    if trigger_index + 1 < len(tokens):
        right = normalize_word(strip_token(tokens[trigger_index + 1]))
        forms.update(join_bigram(trigger_forms, right))
    return frozenset(forms)


def candidate_frames(tokens: Sequence[str], trigger_index: int, index: LuIndex) -> list[str]:
    """Frames whose normalized LUs intersect the trigger's lookup set."""
    return index.lookup(trigger_lookup_set(tokens, trigger_index))

"""The six textual augmenters, each expressed as an edit planner.

Planners never touch gold structure they could corrupt: synonym swaps
skip any token overlapping a trigger span, misspellers never edit the
first character of a trigger token, and punctuation deletion leaves
quote characters that sit on element-span boundaries alone.
"""
from __future__ import annotations

import random
import string

from frameparse.augment.edits import Edit
from frameparse.model import FrameAnnotation, FrameParseError
from frameparse.tokens import tokenize

AUGMENTER_IDS = (
    "quotes",
    "synonyms",
    "random_misspell",
    "keyboard_misspell",
    "punctuation",
    "case",
)

_LETTERS = string.ascii_lowercase

# Physical neighbors on a US QWERTY layout.
_KEYBOARD = {
    "q": "wa", "w": "qes", "e": "wrd", "r": "etf", "t": "ryg", "y": "tuh",
    "u": "yij", "i": "uok", "o": "ipl", "p": "ol",
    "a": "qsz", "s": "awdx", "d": "sefc", "f": "drgv", "g": "fthb",
    "h": "gyjn", "j": "hukm", "k": "jil", "l": "kop",
    "z": "asx", "x": "zsdc", "c": "xdfv", "v": "cfgb", "b": "vghn",
    "n": "bhjm", "m": "njk",
}

# Compact thesaurus for the synonym augmenter; groups are symmetric.
_SYNONYM_GROUPS = [
    ["big", "large", "huge"],
    ["small", "little", "tiny"],
    ["fast", "quick", "rapid"],
    ["slow", "sluggish"],
    ["happy", "glad", "cheerful"],
    ["sad", "unhappy", "gloomy"],
    ["angry", "furious", "irate"],
    ["smart", "clever", "bright"],
    ["strange", "odd", "weird"],
    ["beautiful", "lovely", "pretty"],
    ["important", "significant", "crucial"],
    ["difficult", "hard", "tough"],
    ["easy", "simple"],
    ["old", "ancient", "aged"],
    ["new", "fresh", "recent"],
    ["good", "fine", "decent"],
    ["bad", "poor", "awful"],
    ["cold", "chilly", "frigid"],
    ["hot", "warm", "scorching"],
    ["begin", "start", "commence"],
    ["end", "finish", "conclude"],
    ["buy", "purchase"],
    ["sell", "vend"],
    ["make", "build", "construct"],
    ["break", "shatter", "smash"],
    ["say", "state", "declare"],
    ["tell", "inform"],
    ["see", "observe", "notice"],
    ["look", "glance", "peer"],
    ["walk", "stroll", "amble"],
    ["run", "sprint", "dash"],
    ["eat", "consume", "devour"],
    ["drink", "sip", "gulp"],
    ["house", "home", "dwelling"],
    ["car", "automobile", "vehicle"],
    ["road", "street", "avenue"],
    ["city", "town"],
    ["child", "kid", "youngster"],
    ["man", "fellow", "gentleman"],
    ["woman", "lady"],
    ["money", "cash", "currency"],
    ["job", "work", "occupation"],
    ["idea", "notion", "concept"],
    ["story", "tale", "account"],
    ["letter", "note", "message"],
    ["village", "hamlet", "settlement"],
    ["broken", "damaged", "shattered"],
    ["quickly", "rapidly", "swiftly"],
    ["slowly", "gradually"],
    ["very", "extremely", "really"],
    ["also", "additionally"],
    ["however", "nevertheless"],
    ["often", "frequently"],
    ["always", "constantly"],
    ["never", "not once"],
]

SYNONYMS: dict[str, list[str]] = {}
for _group in _SYNONYM_GROUPS:
    for _word in _group:
        SYNONYMS[_word] = [w for w in _group if w != _word]

_PUNCT_DELETE = set("!\"#$%&'()+,-./:;<=>?@[\\]^_`{|}~")
_QUOTE_CHARS = set("\"'`‘’“”„")

_LATEX_QUOTE_PAIRS = ("``", "''")
_UNICODE_QUOTES = ("„", "“", "”", "«", "»")


def _trigger_spans(annotations) -> list[tuple[int, int]]:
    return [(a.trigger_start, a.trigger_end) for a in annotations]


def _element_spans(annotations) -> list[tuple[int, int]]:
    return [(e.start, e.end) for a in annotations for e in a.elements]


def _overlaps(start: int, end: int, spans) -> bool:
    return any(start < e and s < end for s, e in spans)


def _plan_quotes(text: str, annotations, rng: random.Random) -> list[Edit]:
    edits: list[Edit] = []
    has_fancy = "``" in text or "''" in text or any(q in text for q in _UNICODE_QUOTES)
    if has_fancy:
        i = 0
        while i < len(text):
            if text.startswith(("``", "''"), i):
                edits.append(Edit(i, i + 2, '"'))
                i += 2
            elif text[i] in _UNICODE_QUOTES:
                edits.append(Edit(i, i + 1, '"'))
                i += 1
            else:
                i += 1
        return edits
    # Reverse direction: straight pairs become latex-style quotes.
    positions = [i for i, ch in enumerate(text) if ch == '"']
    for n, pos in enumerate(positions):
        edits.append(Edit(pos, pos + 1, "``" if n % 2 == 0 else "''"))
    return edits


def _plan_synonyms(text: str, annotations, rng: random.Random) -> list[Edit]:
    triggers = _trigger_spans(annotations)
    sites = []
    for tok in tokenize(text):
        word = tok.core
        if not word or not word.isalpha():
            continue
        if _overlaps(tok.core_start, tok.core_end, triggers):
            continue
        if word.lower() in SYNONYMS:
            sites.append(tok)
    if not sites:
        return []
    tok = rng.choice(sites)
    replacement = rng.choice(SYNONYMS[tok.core.lower()])
    if tok.core.isupper():
        replacement = replacement.upper()
    elif tok.core[0].isupper():
        replacement = replacement.capitalize()
    return [Edit(tok.core_start, tok.core_end, replacement)]


def _misspell_sites(text: str, annotations) -> list[int]:
    """Letter positions eligible for a misspelling edit."""
    protected = set()
    triggers = _trigger_spans(annotations)
    for tok in tokenize(text):
        if _overlaps(tok.core_start, tok.core_end, triggers):
            protected.add(tok.core_start)
    return [
        i
        for i, ch in enumerate(text)
        if ch.isalpha() and ch.lower() in _LETTERS and i not in protected
    ]


def _plan_random_misspell(text, annotations, rng: random.Random, rate: float) -> list[Edit]:
    edits = []
    for i in _misspell_sites(text, annotations):
        if rng.random() >= rate:
            continue
        ch = text[i]
        pool = [c for c in _LETTERS if c != ch.lower()]
        repl = rng.choice(pool)
        edits.append(Edit(i, i + 1, repl.upper() if ch.isupper() else repl))
    return edits


def _plan_keyboard_misspell(text, annotations, rng: random.Random, rate: float) -> list[Edit]:
    edits = []
    for i in _misspell_sites(text, annotations):
        if rng.random() >= rate:
            continue
        ch = text[i]
        neighbors = _KEYBOARD.get(ch.lower())
        if not neighbors:
            continue
        repl = rng.choice(neighbors)
        edits.append(Edit(i, i + 1, repl.upper() if ch.isupper() else repl))
    return edits


def _plan_punctuation(text: str, annotations, rng: random.Random) -> list[Edit]:
    element_edges = set()
    for s, e in _element_spans(annotations):
        element_edges.add(s)
        element_edges.add(e - 1)
    edits = []
    for i, ch in enumerate(text):
        if ch not in _PUNCT_DELETE:
            continue
        if ch in _QUOTE_CHARS and i in element_edges:
            continue  # keep quotes delimiting an argument span
        if rng.random() < 0.5:
            edits.append(Edit(i, i + 1, ""))
    return edits


def _plan_case(text: str, annotations, rng: random.Random) -> list[Edit]:
    upper = rng.random() < 0.5
    transformed = []
    for ch in text:
        new = ch.upper() if upper else ch.lower()
        # Keep the edit length-preserving so offsets stay put.
        transformed.append(new if len(new) == 1 else ch)
    new_text = "".join(transformed)
    if new_text == text:
        return []
    return [Edit(0, len(text), new_text)]


def plan_edits(
    kind: str,
    text: str,
    annotations: tuple[FrameAnnotation, ...],
    rng: random.Random,
    char_edit_rate: float = 0.05,
) -> list[Edit]:
    """Edit plan for one augmenter; an empty plan is a valid no-op."""
    if not text:
        raise FrameParseError("cannot augment empty text")
    if kind == "quotes":
        return _plan_quotes(text, annotations, rng)
    if kind == "synonyms":
        return _plan_synonyms(text, annotations, rng)
    if kind == "random_misspell":
        return _plan_random_misspell(text, annotations, rng, char_edit_rate)
    if kind == "keyboard_misspell":
        return _plan_keyboard_misspell(text, annotations, rng, char_edit_rate)
    if kind == "punctuation":
        return _plan_punctuation(text, annotations, rng)
    if kind == "case":
        return _plan_case(text, annotations, rng)
    raise FrameParseError(f"unknown augmenter {kind!r}")

"""Self-contained English lemmatizer.

Morphy-style suffix detachment for nouns and verbs backed by embedded
irregular-form tables, so the package needs no corpus downloads. The
output is used as one normalizer among four whose results are unioned,
which keeps occasional rule misses harmless: a wrong extra form only
widens a lookup set that the stemmers already cover.
"""
from __future__ import annotations

_VOWELS = set("aeiou")

_IRREGULAR_NOUNS = {
    "men": "man", "women": "woman", "children": "child", "teeth": "tooth",
    "feet": "foot", "geese": "goose", "mice": "mouse", "lice": "louse",
    "oxen": "ox", "people": "person", "brethren": "brother", "dice": "die",
    "wives": "wife", "knives": "knife", "lives": "life", "leaves": "leaf",
    "loaves": "loaf", "halves": "half", "selves": "self", "elves": "elf",
    "calves": "calf", "shelves": "shelf", "thieves": "thief",
    "wolves": "wolf", "scarves": "scarf", "hooves": "hoof",
    "axes": "axe", "crises": "crisis", "theses": "thesis",
    "analyses": "analysis", "bases": "basis", "oases": "oasis",
    "phenomena": "phenomenon", "criteria": "criterion", "data": "datum",
    "indices": "index", "appendices": "appendix", "matrices": "matrix",
    "series": "series", "species": "species", "movies": "movie",
    "shoes": "shoe", "toes": "toe", "canoes": "canoe", "oboes": "oboe",
    "buses": "bus", "gases": "gas", "lenses": "lens",
    "viruses": "virus", "bonuses": "bonus",
    "semen": "semen", "ramen": "ramen", "lumen": "lumen", "hymen": "hymen",
    "acumen": "acumen", "regimen": "regimen", "specimen": "specimen",
    "abdomen": "abdomen",
}

_IRREGULAR_VERBS = {
    "am": "be", "is": "be", "are": "be", "was": "be", "were": "be",
    "been": "be", "being": "be", "has": "have", "had": "have",
    "having": "have", "does": "do", "did": "do", "done": "do",
    "went": "go", "gone": "go", "goes": "go", "said": "say", "says": "say",
    "made": "make", "took": "take", "taken": "take", "came": "come",
    "saw": "see", "seen": "see", "gave": "give", "given": "give",
    "got": "get", "gotten": "get", "ran": "run", "wrote": "write",
    "written": "write", "ate": "eat", "eaten": "eat", "fell": "fall",
    "fallen": "fall", "felt": "feel", "found": "find", "held": "hold",
    "kept": "keep", "knew": "know", "known": "know", "left": "leave",
    "lost": "lose", "meant": "mean", "met": "meet", "paid": "pay",
    "rose": "rise", "risen": "rise", "sat": "sit", "sold": "sell",
    "sent": "send", "shook": "shake", "shaken": "shake", "sang": "sing",
    "sung": "sing", "slept": "sleep", "spoke": "speak", "spoken": "speak",
    "spent": "spend", "stood": "stand", "swam": "swim", "swum": "swim",
    "threw": "throw", "thrown": "throw", "told": "tell",
    "thought": "think", "understood": "understand", "wore": "wear",
    "worn": "wear", "won": "win", "brought": "bring", "bought": "buy",
    "built": "build", "caught": "catch", "chose": "choose",
    "chosen": "choose", "dealt": "deal", "drew": "draw", "drawn": "draw",
    "drank": "drink", "drunk": "drink", "drove": "drive",
    "driven": "drive", "flew": "fly", "flown": "fly", "forgot": "forget",
    "forgotten": "forget", "froze": "freeze", "frozen": "freeze",
    "grew": "grow", "grown": "grow", "heard": "hear", "hid": "hide",
    "hidden": "hide", "laid": "lay", "led": "lead", "lay": "lie",
    "lain": "lie", "lit": "light", "rode": "ride", "ridden": "ride",
    "rang": "ring", "rung": "ring", "sought": "seek", "shot": "shoot",
    "showed": "show", "shown": "show", "spun": "spin", "stole": "steal",
    "stolen": "steal", "stuck": "stick", "struck": "strike",
    "swore": "swear", "sworn": "swear", "taught": "teach", "tore": "tear",
    "torn": "tear", "woke": "wake", "woken": "wake", "wound": "wind",
    "became": "become", "began": "begin", "begun": "begin",
    "bent": "bend", "bet": "bet", "bitten": "bite", "bit": "bite",
    "blew": "blow", "blown": "blow", "broke": "break", "broken": "break",
    "lent": "lend", "dying": "die", "lying": "lie", "tying": "tie",
    "dies": "die", "died": "die", "dyed": "dye", "ties": "tie",
    "tied": "tie", "used": "use", "uses": "use", "using": "use",
    "tried": "try", "tries": "try", "trying": "try",
}

# Stems whose final doubled consonant is legitimate and must be kept.
_KEEP_DOUBLE = ("ll", "ss", "ff", "zz")

_UNDOUBLE = ("bb", "dd", "gg", "mm", "nn", "pp", "rr", "tt")


def _vowel_groups(s: str) -> int:
    count = 0
    prev_vowel = False
    for ch in s:
        is_vowel = ch in _VOWELS or ch == "y"
        if is_vowel and not prev_vowel:
            count += 1
        prev_vowel = is_vowel
    return count


def _restore_stem(stem: str) -> str:
    """Undo spelling changes after stripping -ed/-ing."""
    if len(stem) >= 3 and stem[-2:] in _UNDOUBLE:
        return stem[:-1]
    # Restore a dropped final e on one-syllable c-v-c stems ("mak" ->
    # "make") and on stems ending in letters that rarely close a verb.
    if stem.endswith(("u", "v", "c")) and stem[-2:] not in ("au", "ou"):
        return stem + "e"
    if (
        _vowel_groups(stem) == 1
        and len(stem) >= 2
        and stem[-1] not in _VOWELS
        and stem[-1] not in "wxy"
        and stem[-2] in _VOWELS
        and (len(stem) == 2 or stem[-3] not in _VOWELS)
    ):
        return stem + "e"
    if stem.endswith(("bl", "cl", "dl", "fl", "gl", "kl", "pl", "tl", "zl")):
        return stem + "e"
    return stem


def _strip_plural(word: str) -> str | None:
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith(("ches", "shes", "sses", "xes", "zes", "oes")):
        return word[:-2]
    if word.endswith("ses") and len(word) > 4:
        # e-final stems dominate here: houses, causes, uses, rises.
        return word[:-1]
    if word.endswith("s") and len(word) > 2 and not word.endswith(("ss", "us", "is")):
        return word[:-1]
    return None


def noun_lemma(word: str) -> str:
    """Base form of a noun; the word itself when no rule applies."""
    word = word.lower()
    if word in _IRREGULAR_NOUNS:
        return _IRREGULAR_NOUNS[word]
    if word.endswith("men") and len(word) > 4:
        return word[:-3] + "man"
    stripped = _strip_plural(word)
    return stripped if stripped is not None else word


def verb_lemma(word: str) -> str:
    """Base form of a verb; the word itself when no rule applies."""
    word = word.lower()
    if word in _IRREGULAR_VERBS:
        return _IRREGULAR_VERBS[word]
    if word.endswith("ies") and len(word) > 3:
        return word[:-3] + "y"
    stripped = _strip_plural(word)
    if stripped is not None:
        return stripped
    if word.endswith("ied") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith("ed") and len(word) > 3:
        stem = word[:-2]
        # e-final verbs only add d: agreed -> agree, saved -> save.
        return word[:-1] if stem.endswith("e") else _restore_stem(stem)
    if word.endswith("ing") and len(word) > 4:
        return _restore_stem(word[:-3])
    return word


def lemma_forms(word: str) -> set[str]:
    """Union of the noun and verb base forms of the word."""
    word = word.lower()
    return {noun_lemma(word), verb_lemma(word)}

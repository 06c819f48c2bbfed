"""Snowball English stemmer (the revised Porter algorithm).

Region-based variant: suffixes are only removed when they fall inside
R1/R2, which makes it more conservative than the original on short
words ("use" keeps its e) while still conflating inflections
("trying" -> "tri", "running" -> "run").
"""
from __future__ import annotations

_VOWELS = "aeiouy"
_DOUBLES = ("bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt")
_LI_ENDING = "cdeghkmnrt"

_SPECIAL = {
    "skis": "ski", "skies": "sky", "dying": "die", "lying": "lie",
    "tying": "tie", "idly": "idl", "gently": "gentl", "ugly": "ugli",
    "early": "earli", "only": "onli", "singly": "singl", "sky": "sky",
    "news": "news", "howe": "howe", "atlas": "atlas", "cosmos": "cosmos",
    "bias": "bias", "andes": "andes", "inning": "inning",
    "innings": "inning", "outing": "outing", "outings": "outing",
    "canning": "canning", "cannings": "canning", "herring": "herring",
    "herrings": "herring", "earring": "earring", "earrings": "earring",
    "proceed": "proceed", "proceeds": "proceed", "proceeded": "proceed",
    "proceeding": "proceed", "exceed": "exceed", "exceeds": "exceed",
    "exceeded": "exceed", "exceeding": "exceed", "succeed": "succeed",
    "succeeds": "succeed", "succeeded": "succeed", "succeeding": "succeed",
}

_STEP2 = (
    ("ization", "ize"), ("ational", "ate"), ("fulness", "ful"),
    ("ousness", "ous"), ("iveness", "ive"), ("tional", "tion"),
    ("biliti", "ble"), ("lessli", "less"), ("entli", "ent"),
    ("ation", "ate"), ("alism", "al"), ("aliti", "al"), ("ousli", "ous"),
    ("iviti", "ive"), ("fulli", "ful"), ("enci", "ence"), ("anci", "ance"),
    ("abli", "able"), ("izer", "ize"), ("ator", "ate"), ("alli", "al"),
    ("bli", "ble"), ("ogi", "og"), ("li", ""),
)

_STEP3 = (
    ("ational", "ate"), ("tional", "tion"), ("alize", "al"),
    ("icate", "ic"), ("iciti", "ic"), ("ative", ""), ("ical", "ic"),
    ("ness", ""), ("ful", ""),
)

_STEP4 = (
    "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism",
    "ate", "iti", "ous", "ive", "ize", "ion", "al", "er", "ic",
)


def _mark_consonant_ys(word: str) -> str:
    if word.startswith("y"):
        word = "Y" + word[1:]
    chars = list(word)
    for i in range(1, len(chars)):
        if chars[i] == "y" and chars[i - 1] in _VOWELS:
            chars[i] = "Y"
    return "".join(chars)


def _regions(word: str) -> tuple[str, str]:
    if word.startswith(("gener", "arsen")):
        r1 = word[5:]
    elif word.startswith("commun"):
        r1 = word[6:]
    else:
        r1 = ""
        for i in range(1, len(word)):
            if word[i] not in _VOWELS and word[i - 1] in _VOWELS:
                r1 = word[i + 1:]
                break
    r2 = ""
    for i in range(1, len(r1)):
        if r1[i] not in _VOWELS and r1[i - 1] in _VOWELS:
            r2 = r1[i + 1:]
            break
    return r1, r2


def _ends_short_syllable(word: str) -> bool:
    if len(word) == 2:
        return word[0] in _VOWELS and word[1] not in _VOWELS
    if len(word) >= 3:
        return (
            word[-1] not in _VOWELS
            and word[-1] not in "wxY"
            and word[-2] in _VOWELS
            and word[-3] not in _VOWELS
        )
    return False


def snowball_stem(word: str) -> str:
    """Stem one English word."""
    word = word.lower()
    if len(word) <= 2:
        return word
    if word in _SPECIAL:
        return _SPECIAL[word]

    word = word.replace("’", "'").replace("‘", "'").replace("‛", "'")
    if word.startswith("'"):
        word = word[1:]
    word = _mark_consonant_ys(word)
    r1, r2 = _regions(word)

    # Step 0: possessive endings.
    for suffix in ("'s'", "'s", "'"):
        if word.endswith(suffix):
            word, r1, r2 = word[: -len(suffix)], r1[: -len(suffix)], r2[: -len(suffix)]
            break

    # Step 1a.
    for suffix in ("sses", "ied", "ies", "us", "ss", "s"):
        if not word.endswith(suffix):
            continue
        if suffix == "sses":
            word, r1, r2 = word[:-2], r1[:-2], r2[:-2]
        elif suffix in ("ied", "ies"):
            cut = 2 if len(word[: -len(suffix)]) > 1 else 1
            word, r1, r2 = word[:-cut], r1[:-cut], r2[:-cut]
        elif suffix == "s":
            if any(ch in _VOWELS for ch in word[:-2]):
                word, r1, r2 = word[:-1], r1[:-1], r2[:-1]
        break

    # Step 1b.
    for suffix in ("eedly", "ingly", "edly", "eed", "ing", "ed"):
        if not word.endswith(suffix):
            continue
        if suffix in ("eed", "eedly"):
            if r1.endswith(suffix):
                word = word[: -len(suffix)] + "ee"
                r1 = r1[: -len(suffix)] + "ee" if len(r1) >= len(suffix) else ""
                r2 = r2[: -len(suffix)] + "ee" if len(r2) >= len(suffix) else ""
        elif any(ch in _VOWELS for ch in word[: -len(suffix)]):
            word, r1, r2 = word[: -len(suffix)], r1[: -len(suffix)], r2[: -len(suffix)]
            if word.endswith(("at", "bl", "iz")):
                word += "e"
                r1 += "e"
                if len(word) > 5 or len(r1) >= 3:
                    r2 += "e"
            elif word.endswith(_DOUBLES):
                word, r1, r2 = word[:-1], r1[:-1], r2[:-1]
            elif r1 == "" and _ends_short_syllable(word):
                word += "e"
                if r1:
                    r1 += "e"
                if r2:
                    r2 += "e"
        break

    # Step 1c: y -> i after a consonant, but not at the word start.
    if len(word) > 2 and word[-1] in "yY" and word[-2] not in _VOWELS:
        word = word[:-1] + "i"
        r1 = r1[:-1] + "i" if r1 else ""
        r2 = r2[:-1] + "i" if r2 else ""

    # Step 2.
    for suffix, repl in _STEP2:
        if word.endswith(suffix):
            if r1.endswith(suffix):
                if suffix == "ogi":
                    if word[-4] == "l":
                        word, r1, r2 = word[:-1], r1[:-1], r2[:-1]
                elif suffix == "li":
                    if word[-3] in _LI_ENDING:
                        word, r1, r2 = word[:-2], r1[:-2], r2[:-2]
                else:
                    word = word[: -len(suffix)] + repl
                    r1 = r1[: -len(suffix)] + repl if len(r1) >= len(suffix) else ""
                    if len(r2) >= len(suffix):
                        r2 = r2[: -len(suffix)] + repl
                    else:
                        r2 = "e" if suffix in ("ational", "ation", "ator", "iveness", "iviti") else ""
            break

    # Step 3.
    for suffix, repl in _STEP3:
        if word.endswith(suffix):
            if r1.endswith(suffix):
                if suffix == "ative":
                    if r2.endswith(suffix):
                        word, r1, r2 = word[:-5], r1[:-5], r2[:-5]
                else:
                    word = word[: -len(suffix)] + repl
                    r1 = r1[: -len(suffix)] + repl if len(r1) >= len(suffix) else ""
                    r2 = r2[: -len(suffix)] + repl if len(r2) >= len(suffix) else ""
            break

    # Step 4.
    for suffix in _STEP4:
        if word.endswith(suffix):
            if r2.endswith(suffix):
                if suffix == "ion":
                    if word[-4] in "st":
                        word, r1, r2 = word[:-3], r1[:-3], r2[:-3]
                else:
                    word, r1, r2 = (
                        word[: -len(suffix)],
                        r1[: -len(suffix)],
                        r2[: -len(suffix)],
                    )
            break

    # Step 5.
    if r2.endswith("l") and word[-2] == "l":
        word = word[:-1]
    elif r2.endswith("e"):
        word = word[:-1]
    elif r1.endswith("e"):
        if len(word) >= 4 and (
            word[-2] in _VOWELS
            or word[-2] in "wxY"
            or word[-3] not in _VOWELS
            or word[-4] in _VOWELS
        ):
            word = word[:-1]

    return word.replace("Y", "y")

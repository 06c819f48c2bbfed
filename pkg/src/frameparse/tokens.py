"""Whitespace tokenization with punctuation-aware core spans.

Tokens are maximal non-whitespace runs; each token also exposes its
"core" span with leading/trailing punctuation stripped, which is what
trigger offsets refer to and what normalization consumes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from frameparse.luindex import strip_token

_TOKEN_RE = re.compile(r"\S+")


@dataclass(frozen=True, slots=True)
class Token:
    text: str
    start: int
    end: int
    core: str
    core_start: int
    core_end: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        raw = m.group()
        core = strip_token(raw)
        if core:
            # strip() removes from the edges only and the core starts
            # with a non-punctuation char, so find() locates it exactly.
            core_start = m.start() + raw.find(core)
            core_end = core_start + len(core)
        else:
            core_start = m.start()
            core_end = m.end()
        tokens.append(Token(raw, m.start(), m.end(), core, core_start, core_end))
    return tokens


def token_at(tokens: list[Token], offset: int) -> Token | None:
    """The token whose full span contains the character offset."""
    for tok in tokens:
        if tok.start <= offset < tok.end:
            return tok
    return None


def token_index_at(tokens: list[Token], offset: int) -> int | None:
    for i, tok in enumerate(tokens):
        if tok.start <= offset < tok.end:
            return i
    return None


def candidates_at(text: str, trigger_start: int, index) -> list[str]:
    """Candidate frames for the trigger at a character offset."""
    from frameparse.luindex import candidate_frames

    tokens = tokenize(text)
    i = token_index_at(tokens, trigger_start)
    if i is None:
        return []
    return candidate_frames([t.text for t in tokens], i, index)

"""Inference pipeline: three seq2seq stages run in series over a
pluggable text-in/text-out backend.

Stage 1 marks trigger locations, stage 2 classifies one frame per
trigger with lexical-unit hints, stage 3 extracts element arguments
per classified frame. Prompts from many sentences at the same stage
are pooled into batches; one sentence's bad output never poisons the
others. The backend sees only prompt strings and returns only output
strings; all parsing of its output is total and diagnostic-driven.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Protocol, Sequence

import requests

from frameparse import codec
from frameparse.luindex import LuIndex
from frameparse.model import (
    AnnotatedSentence,
    DetectedFrame,
    FrameCatalog,
    FrameParseError,
    ParseResult,
)
from frameparse.tokens import candidates_at, token_at, tokenize

DEFAULT_MAX_NEW_TOKENS = 512
DEFAULT_BATCH_SIZE = 32


class BackendError(FrameParseError):
    """The generation backend failed or broke the wire contract."""


class Seq2SeqBackend(Protocol):
    """Batch text generation: same-length, same-order outputs."""

    def generate_batch(self, inputs: Sequence[str]) -> list[str]:
        ...


class ScriptedBackend:
    """Deterministic prompt -> output map; the test double for a model.

    Unknown prompts fall back to echoing the text portion of the
    prompt, which makes an unscripted trigger stage a clean no-op.
    """

    def __init__(self, exchanges: dict[str, str]) -> None:
        self._exchanges = dict(exchanges)

    def __len__(self) -> int:
        return len(self._exchanges)

    def generate_batch(self, inputs: Sequence[str]) -> list[str]:
        outputs = []
        for prompt in inputs:
            if prompt in self._exchanges:
                outputs.append(self._exchanges[prompt])
            else:
                _, _, text = prompt.partition(": ")
                outputs.append(text)
        return outputs

    @classmethod
    def from_jsonl(cls, path) -> "ScriptedBackend":
        exchanges = {}
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                exchanges[rec["input"]] = rec["output"]
        return cls(exchanges)

    def to_jsonl(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for prompt, output in self._exchanges.items():
                fh.write(json.dumps({"input": prompt, "output": output}, ensure_ascii=False) + "\n")


class EchoBackend:
    """Returns the text portion unchanged; predicts nothing."""

    def generate_batch(self, inputs: Sequence[str]) -> list[str]:
        return [prompt.partition(": ")[2] for prompt in inputs]


class HttpBackend:
    """Client for the generation wire protocol.

    POST /generate {"inputs": [...], "max_new_tokens": n} ->
    {"outputs": [...]}; GET /healthz for liveness.
    """

    def __init__(
        self,
        base_url: str,
        max_new_tokens: int = DEFAULT_MAX_NEW_TOKENS,
        timeout: float = 60.0,
        session: requests.Session | None = None,
    ) -> None:
        self.base_url = base_url.rstrip("/")
        self.max_new_tokens = max_new_tokens
        self.timeout = timeout
        self._session = session or requests.Session()

    def healthy(self) -> bool:
        try:
            resp = self._session.get(f"{self.base_url}/healthz", timeout=self.timeout)
        except requests.RequestException:
            return False
        return resp.status_code == 200

    def generate_batch(self, inputs: Sequence[str]) -> list[str]:
        payload = {"inputs": list(inputs), "max_new_tokens": self.max_new_tokens}
        try:
            resp = self._session.post(
                f"{self.base_url}/generate", json=payload, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise BackendError(f"backend unreachable: {exc}") from exc
        if resp.status_code != 200:
            raise BackendError(f"backend returned HTTP {resp.status_code}")
        try:
            outputs = resp.json()["outputs"]
        except (ValueError, KeyError) as exc:
            raise BackendError(f"malformed backend response: {exc}") from exc
        if not isinstance(outputs, list) or len(outputs) != len(inputs):
            raise BackendError(
                f"backend returned {len(outputs) if isinstance(outputs, list) else 'non-list'} "
                f"outputs for {len(inputs)} inputs"
            )
        return [str(o) for o in outputs]


def scripted_backend_from_gold(
    sentences: Sequence[AnnotatedSentence],
    catalog: FrameCatalog,
    index: LuIndex,
) -> ScriptedBackend:
    """Backend that answers every stage prompt with the gold output."""
    exchanges: dict[str, str] = {}
    for s in sentences:
        trigger_rec = codec.encode_trigger_task(s)
        exchanges[trigger_rec.input] = trigger_rec.target
        for ann in s.annotations:
            candidates = candidates_at(s.text, ann.trigger_start, index)
            frame_rec = codec.encode_frame_task(s, ann.trigger_start, candidates)
            exchanges[frame_rec.input] = frame_rec.target
            frame = catalog.get(ann.frame)
            if frame is None:
                continue
            args_rec = codec.encode_args_task(s, ann.trigger_start, frame)
            exchanges[args_rec.input] = args_rec.target
    return ScriptedBackend(exchanges)


@dataclass
class _SentenceState:
    text: str
    diagnostics: list[str]
    triggers: list[int]
    frames: list[tuple[int, str]]
    detected: list[DetectedFrame]
    failed: bool = False


def _trigger_end(text: str, trigger_start: int) -> int:
    tok = token_at(tokenize(text), trigger_start)
    if tok is None:
        return min(trigger_start + 1, len(text))
    return tok.core_end if tok.core_start <= trigger_start < tok.core_end else tok.end


def _batched(items: list, batch_size: int):
    for i in range(0, len(items), batch_size):
        yield items[i : i + batch_size]


def _run_stage(
    owners: list[int],
    prompts: list[str],
    states: list[_SentenceState],
    backend: Seq2SeqBackend,
    batch_size: int,
    stage_name: str,
    max_in_flight: int = 1,
) -> list[tuple[int, str]]:
    """Send pooled prompts through the backend in bounded batches.

    Returns (prompt position, output) pairs. A failed batch marks only
    the sentences that own its prompts; other batches are unaffected.
    With max_in_flight > 1 that many batches run concurrently.
    """
    positions = list(range(len(prompts)))
    batches = list(_batched(positions, batch_size))

    def call(batch: list[int]) -> list[str] | BackendError:
        try:
            return backend.generate_batch([prompts[p] for p in batch])
        except BackendError as exc:
            return exc

    if max_in_flight > 1 and len(batches) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=max_in_flight) as pool:
            outcomes = list(pool.map(call, batches))
    else:
        outcomes = [call(batch) for batch in batches]

    results: list[tuple[int, str]] = []
    for batch, outcome in zip(batches, outcomes):
        if isinstance(outcome, BackendError):
            for p in batch:
                states[owners[p]].failed = True
                states[owners[p]].diagnostics.append(f"{stage_name} backend error: {outcome}")
            continue
        if len(outcome) != len(batch):
            for p in batch:
                states[owners[p]].failed = True
                states[owners[p]].diagnostics.append(
                    f"{stage_name} backend returned {len(outcome)} outputs "
                    f"for {len(batch)} inputs"
                )
            continue
        results.extend(zip(batch, outcome))
    return results


def detect_frames_bulk(
    texts: Sequence[str],
    backend: Seq2SeqBackend,
    catalog: FrameCatalog,
    index: LuIndex,
    batch_size: int = DEFAULT_BATCH_SIZE,
    max_in_flight: int = 1,
) -> list[ParseResult]:
    """Parse many sentences with pooled backend batches per stage."""
    states = [_SentenceState(t, [], [], [], []) for t in texts]

    # Stage 1: trigger identification.
    owners1: list[int] = []
    prompts1: list[str] = []
    for i, state in enumerate(states):
        if not state.text:
            state.diagnostics.append("empty input text; nothing to parse")
            continue
        if codec.MARKER in state.text:
            state.diagnostics.append(
                "input text contains the marker character '*'; not parseable"
            )
            continue
        owners1.append(i)
        prompts1.append(codec.trigger_input(state.text))
    for pos, output in _run_stage(owners1, prompts1, states, backend, batch_size, "trigger", max_in_flight):
        state = states[owners1[pos]]
        offsets, diags = codec.decode_trigger_output(state.text, output)
        state.triggers = offsets
        state.diagnostics.extend(diags)

    # Stage 2: frame classification per trigger.
    owners2: list[int] = []
    prompts2: list[str] = []
    offsets2: list[int] = []
    for i, state in enumerate(states):
        if state.failed:
            continue
        for off in state.triggers:
            candidates = candidates_at(state.text, off, index)
            owners2.append(i)
            prompts2.append(codec.frame_input(state.text, off, candidates))
            offsets2.append(off)
    for pos, output in _run_stage(owners2, prompts2, states, backend, batch_size, "frame", max_in_flight):
        state = states[owners2[pos]]
        if state.failed:
            continue
        name, diags = codec.decode_frame_output(output, catalog)
        state.diagnostics.extend(diags)
        if name is not None:
            state.frames.append((offsets2[pos], name))

    # Stage 3: argument extraction per classified frame.
    owners3: list[int] = []
    prompts3: list[str] = []
    meta3: list[tuple[int, str]] = []
    for i, state in enumerate(states):
        if state.failed:
            continue
        for off, name in state.frames:
            frame = catalog.get(name)
            if frame is None:
                continue
            owners3.append(i)
            prompts3.append(codec.args_input(state.text, off, frame))
            meta3.append((off, name))
    for pos, output in _run_stage(owners3, prompts3, states, backend, batch_size, "args", max_in_flight):
        state = states[owners3[pos]]
        if state.failed:
            continue
        off, name = meta3[pos]
        frame = catalog.get(name)
        spans, diags = codec.decode_args_output(output, frame, state.text, off)
        state.diagnostics.extend(diags)
        state.detected.append(
            DetectedFrame(off, _trigger_end(state.text, off), name, tuple(spans))
        )

    results = []
    for state in states:
        state.detected.sort(key=lambda f: f.trigger_start)
        results.append(
            ParseResult(state.text, tuple(state.detected), tuple(state.diagnostics))
        )
    return results


def detect_frames(
    text: str,
    backend: Seq2SeqBackend,
    catalog: FrameCatalog,
    index: LuIndex,
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> ParseResult:
    """Parse one sentence: triggers, frames, then element arguments."""
    return detect_frames_bulk([text], backend, catalog, index, batch_size)[0]

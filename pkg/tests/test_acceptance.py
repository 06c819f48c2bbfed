"""Acceptance suite: one test per release criterion, each printing a
PASS line when its assertions hold (run with `pytest -s` to see them).

Full-scale model quality (the published F1 table) requires multi-hour
GPU fine-tuning and is explicitly out of scope here; what this suite
pins down instead is that the toolkit emits the exact staged training
data, prompt grammar, and evaluation harness needed to attempt it.
"""
from __future__ import annotations

import os
import random
import time
from pathlib import Path

import pytest

from frameparse import codec
from frameparse.augment import (
    AUGMENTER_IDS,
    AugmentConfig,
    augment_sentence,
    plan_edits,
)
from frameparse.augment.edits import apply_edits, validate_plan
from frameparse.dataset import StagePlan, build_stage, default_stage_plans
from frameparse.evaluate import Counts, evaluate_split
from frameparse.ingest import load_frame_catalog, load_fulltext
from frameparse.luindex import build_index, candidate_frames
from frameparse.model import ElementSpan, sentence_to_record, dumps_record
from frameparse.pipeline import ScriptedBackend, scripted_backend_from_gold
from tests.conftest import (
    EXAMPLE_TEXT,
    FRAMENET_MINI,
    GOLDEN_ARGS_LIFT_INPUT,
    GOLDEN_ARGS_LIFT_OUTPUT,
    GOLDEN_ARGS_TRYING_INPUT,
    GOLDEN_ARGS_TRYING_OUTPUT,
    GOLDEN_FRAME_LIFT_INPUT,
    GOLDEN_FRAME_LIFT_OUTPUT,
    GOLDEN_FRAME_TRYING_INPUT,
    GOLDEN_FRAME_TRYING_OUTPUT,
    GOLDEN_TRIGGER_INPUT,
    GOLDEN_TRIGGER_OUTPUT,
)
from tests.corpusgen import make_corpus

TRYING_CANDIDATES = [
    "Attempt", "Attempt_means", "Operational_testing", "Tasting",
    "Trial", "Try_defendant", "Trying_out",
]
LIFT_CANDIDATES = [
    "Body_movement", "Building_subparts", "Cause_motion", "Cause_to_end",
    "Connecting_architecture", "Theft",
]


def _passed(name: str) -> None:
    print(f"\nACCEPTANCE {name}: PASS")


def _framenet_dir() -> Path:
    """Real FrameNet 1.7 when available, else the bundled fixture."""
    env = os.environ.get("FRAMENET_DATA_DIR")
    if env and (Path(env) / "frame").is_dir():
        return Path(env)
    return FRAMENET_MINI


def _real_framenet() -> bool:
    return _framenet_dir() != FRAMENET_MINI


def test_codec_golden_strings(example_sentence, catalog):
    """The published prompt/output exchanges, byte-exact both ways."""
    start = time.monotonic()
    s = example_sentence

    rec = codec.encode_trigger_task(s)
    assert (rec.input, rec.target) == (GOLDEN_TRIGGER_INPUT, GOLDEN_TRIGGER_OUTPUT)

    rec = codec.encode_frame_task(s, 14, TRYING_CANDIDATES)
    assert (rec.input, rec.target) == (GOLDEN_FRAME_TRYING_INPUT, GOLDEN_FRAME_TRYING_OUTPUT)
    rec = codec.encode_frame_task(s, 25, LIFT_CANDIDATES)
    assert (rec.input, rec.target) == (GOLDEN_FRAME_LIFT_INPUT, GOLDEN_FRAME_LIFT_OUTPUT)

    rec = codec.encode_args_task(s, 14, catalog.get("Attempt_means"))
    assert (rec.input, rec.target) == (GOLDEN_ARGS_TRYING_INPUT, GOLDEN_ARGS_TRYING_OUTPUT)
    rec = codec.encode_args_task(s, 25, catalog.get("Connecting_architecture"))
    assert (rec.input, rec.target) == (GOLDEN_ARGS_LIFT_INPUT, GOLDEN_ARGS_LIFT_OUTPUT)

    # Decoders invert every exchange.
    offsets, diags = codec.decode_trigger_output(EXAMPLE_TEXT, GOLDEN_TRIGGER_OUTPUT)
    assert (offsets, diags) == ([14, 25], [])
    assert codec.decode_frame_output(GOLDEN_FRAME_TRYING_OUTPUT, catalog) == ("Attempt_means", [])
    assert codec.decode_frame_output(GOLDEN_FRAME_LIFT_OUTPUT, catalog) == (
        "Connecting_architecture", [],
    )
    spans, diags = codec.decode_args_output(
        GOLDEN_ARGS_TRYING_OUTPUT, catalog.get("Attempt_means"), EXAMPLE_TEXT, 14
    )
    assert (spans, diags) == ([ElementSpan("Means", 21, 29)], [])
    spans, diags = codec.decode_args_output(
        GOLDEN_ARGS_LIFT_OUTPUT, catalog.get("Connecting_architecture"), EXAMPLE_TEXT, 25
    )
    assert (spans, diags) == ([ElementSpan("Part", 21, 29)], [])

    assert time.monotonic() - start < 1.0
    _passed("codec golden strings (exact, <1s)")


def test_lu_lookup_candidate_sets():
    """Candidate frames for the published example sentence."""
    catalog, _ = load_frame_catalog(_framenet_dir())
    index = build_index(catalog)
    tokens = EXAMPLE_TEXT.split()

    trying = candidate_frames(tokens, 4, index)
    assert trying == TRYING_CANDIDATES, f"exact-set mismatch: {trying}"

    lift = candidate_frames(tokens, 6, index)
    assert set(lift) >= set(LIFT_CANDIDATES), f"missing lift candidates: {lift}"
    if not _real_framenet():
        assert lift == LIFT_CANDIDATES

    source = "FrameNet 1.7" if _real_framenet() else "bundled FrameNet-layout fixture"
    _passed(f"LU lookup candidate sets ({source})")


def test_round_trip_end_to_end_f1():
    """Gold-derived backend scores F1 = 1.000 on a 100-sentence subset."""
    start = time.monotonic()
    catalog, _ = load_frame_catalog(FRAMENET_MINI)
    index = build_index(catalog)
    sentences = make_corpus(100, seed=2026)
    backend = scripted_backend_from_gold(sentences, catalog, index)
    report = evaluate_split(sentences, catalog, index, backend, split_name="roundtrip")
    scores = report.splits["roundtrip"]
    for task in ("trigger_id", "frame_classification", "arg_extraction"):
        counts = scores.counts(task)
        assert counts.f1 == 1.0, f"{task}: {counts}"
        assert counts.fp == 0 and counts.fn == 0
    elapsed = time.monotonic() - start
    assert elapsed < 10.0
    _passed(f"round-trip end-to-end F1 = 1.000 on 100 sentences ({elapsed:.1f}s)")


def test_metric_oracle_hand_counted():
    """20-sentence fixture with 3 injected errors matches hand counts."""
    catalog, _ = load_frame_catalog(FRAMENET_MINI)
    index = build_index(catalog)
    sentences = make_corpus(20, seed=7)
    gold = scripted_backend_from_gold(sentences, catalog, index)
    exchanges = dict(gold._exchanges)

    # Error 1: trigger of sentence 0 never marked (cascades: its frame
    # and its 3 argument spans all become misses).
    s0 = sentences[0]
    exchanges[codec.trigger_input(s0.text)] = s0.text

    # Error 2: sentence 1 classified into the wrong catalog frame; the
    # resulting args prompt is unscripted, and the echo fallback decodes
    # to zero spans (3 argument misses).
    s1 = sentences[1]
    gold_frame_1 = s1.annotations[0].frame
    wrong_frame = "Giving"
    assert wrong_frame != gold_frame_1
    from frameparse.tokens import candidates_at

    cands = candidates_at(s1.text, s1.annotations[0].trigger_start, index)
    exchanges[codec.frame_input(s1.text, s1.annotations[0].trigger_start, cands)] = wrong_frame

    # Error 3: one argument of sentence 2 gets a truncated span
    # (both fp and fn); its other two arguments stay correct.
    s2 = sentences[2]
    ann2 = s2.annotations[0]
    frame2 = catalog.get(ann2.frame)
    e0 = ann2.elements[0]
    wrong_text = s2.text[e0.start + 4 : e0.end]
    items = [f'{e0.element}="{wrong_text}"']
    for e in ann2.elements[1:]:
        items.append(f'{e.element}="{s2.text[e.start:e.end]}"')
    exchanges[codec.args_input(s2.text, ann2.trigger_start, frame2)] = " | ".join(items)

    report = evaluate_split(
        sentences, catalog, index, ScriptedBackend(exchanges), split_name="oracle"
    )
    scores = report.splits["oracle"]

    # Hand counts: 20 sentences, 1 annotation each, 3 elements each.
    # Triggers: 19 found, 1 missed.
    assert scores.trigger_id == Counts(19, 0, 1)
    # Frames: s0 missing (fn), s1 wrong (fp+fn), 18 correct.
    assert scores.frame_classification == Counts(18, 1, 2)
    # Args: 60 gold spans. s0: 3 fn (cascade). s1: 3 fn (wrong frame,
    # no spans). s2: 1 wrong span (fp+fn) + 2 correct. Rest correct:
    # 17 * 3 + 2 = 53 tp, 1 fp, 3 + 3 + 1 = 7 fn.
    assert scores.arg_extraction == Counts(53, 1, 7)
    _passed("metric oracle: hand-counted tp/fp/fn reproduced exactly")


def test_augmentation_safety_100k():
    """100,000 fuzzed (sentence, config, seed) triples: all spans stay
    in bounds, the length-accounting law holds, and equal seeds give
    identical bytes."""
    rng = random.Random(20260810)
    sentences = make_corpus(40, seed=5)
    configs = [
        AugmentConfig.default(),
        AugmentConfig.trigger_default(),
        AugmentConfig(probabilities={k: 1.0 for k in AUGMENTER_IDS}, char_edit_rate=0.2),
    ]
    n_plan_checks = 0
    n_chain_checks = 0
    for i in range(100_000):
        s = sentences[i % len(sentences)]
        seed = rng.randrange(1 << 48)
        if i % 10 == 0:
            # Chain level: determinism and bounds.
            config = configs[i // 10 % len(configs)]
            a = augment_sentence(s, config, seed)
            b = augment_sentence(s, config, seed)
            assert dumps_record(sentence_to_record(a)) == dumps_record(sentence_to_record(b))
            n = len(a.text)
            for ann in a.annotations:
                assert 0 <= ann.trigger_start < ann.trigger_end <= n
                for e in ann.elements:
                    assert 0 <= e.start < e.end <= n
            n_chain_checks += 1
        else:
            # Plan level: length accounting and bounds.
            kind = AUGMENTER_IDS[i % len(AUGMENTER_IDS)]
            plan_rng = random.Random(seed)
            plan = plan_edits(kind, s.text, s.annotations, plan_rng, char_edit_rate=0.2)
            plan = validate_plan(s.text, plan)
            edited, _warnings = apply_edits(s, plan)
            assert len(edited.text) == len(s.text) + sum(e.delta for e in plan)
            n = len(edited.text)
            for ann in edited.annotations:
                assert 0 <= ann.trigger_start < ann.trigger_end <= n
                for e in ann.elements:
                    assert 0 <= e.start < e.end <= n
            n_plan_checks += 1
    assert n_plan_checks + n_chain_checks == 100_000
    _passed(
        f"augmentation safety: {n_plan_checks} plan + {n_chain_checks} chain "
        "fuzz checks, zero violations"
    )


def test_balancing_law(fulltext, catalog, index):
    """Finetune generation: trigger = 3x sentences, frame = args = annotations."""
    plans = default_stage_plans(augment=True)
    finetune = next(p for p in plans if p.stage == "finetune")
    records = build_stage(finetune, fulltext, catalog, index, seed=404)
    kinds = [r.kind for r in records]
    n_sentences = len(fulltext)
    n_annotations = sum(len(s.annotations) for s in fulltext)
    assert kinds.count("trigger_id") == 3 * n_sentences
    assert kinds.count("frame_classification") == n_annotations
    assert kinds.count("arg_extraction") == n_annotations
    _passed(
        f"balancing law: {3 * n_sentences} trigger / {n_annotations} frame / "
        f"{n_annotations} args emissions"
    )


def test_training_stages_and_report_format(fulltext, exemplars, catalog, index, tmp_path):
    """Full-scale F1 needs GPU fine-tuning (out of desk scope); the
    toolkit must still emit the exact stage schedule and the report
    columns used for comparison."""
    plans = default_stage_plans()
    assert [p.stage for p in plans] == ["propbank", "exemplar", "finetune"]
    # Pretraining stages never emit trigger tasks; finetune emits all 3.
    for plan in plans[:2]:
        assert "trigger_id" not in plan.task_kinds
    assert set(plans[2].task_kinds) == {
        "trigger_id", "frame_classification", "arg_extraction",
    }
    exemplar_records = build_stage(plans[1], exemplars, catalog, index, seed=1)
    assert exemplar_records and all(r.kind != "trigger_id" for r in exemplar_records)

    backend = scripted_backend_from_gold(fulltext, catalog, index)
    report = evaluate_split(fulltext, catalog, index, backend, split_name="dev")
    report = evaluate_split(fulltext, catalog, index, backend, split_name="test", report=report)
    table = report.render_table()
    for column in ("Trigger ID", "Frame ID", "Args ID"):
        assert column in table
    assert "dev" in table and "test" in table
    _passed("training stages + report columns (full-scale F1 out of desk scope)")


@pytest.mark.skipif(not _real_framenet(), reason="full FrameNet 1.7 corpus not available")
def test_full_corpus_scale_counts():
    """With the licensed corpus present: fulltext and exemplar volumes."""
    catalog, _ = load_frame_catalog(_framenet_dir())
    fulltext, _ = load_fulltext(_framenet_dir(), catalog)
    assert 4_000 <= len(fulltext) <= 7_000
    from frameparse.ingest import load_exemplars

    exemplars, _ = load_exemplars(_framenet_dir(), catalog)
    assert 80_000 <= len(exemplars) <= 220_000
    _passed("full-corpus sentence volumes")

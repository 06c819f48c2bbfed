from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from toycorpus import toy_catalog, toy_sentence, write_stage  # noqa: E402

from frameparse.augment import AugmentConfig
from frameparse.dataset import StagePlan
from frameparse.luindex import build_index
from frameserve.train import TrainRun, fine_tune


@pytest.fixture(scope="session")
def stage_files(tmp_path_factory):
    """Three staged JSONL files totaling >= 500 task records."""
    out = tmp_path_factory.mktemp("stages")
    catalog = toy_catalog()
    index = build_index(catalog)
    rng = random.Random(11)
    pretrain_kinds = ("frame_classification", "arg_extraction")
    all_kinds = ("trigger_id", "frame_classification", "arg_extraction")
    no_aug = AugmentConfig.disabled()

    propbank = [toy_sentence(i, rng, "propbank") for i in range(55)]
    exemplar = [toy_sentence(i, rng, "exemplar") for i in range(55)]
    train = [toy_sentence(i, rng, "fulltext") for i in range(60)]

    paths = (out / "stage_propbank.jsonl", out / "stage_exemplar.jsonl",
             out / "stage_finetune.jsonl")
    total = 0
    total += write_stage(
        paths[0],
        StagePlan("propbank", "propbank", pretrain_kinds, augment=no_aug, trigger_augment=no_aug),
        propbank, catalog, index, seed=1,
    )
    total += write_stage(
        paths[1],
        StagePlan("exemplar", "exemplar", pretrain_kinds, augment=no_aug, trigger_augment=no_aug),
        exemplar, catalog, index, seed=2,
    )
    total += write_stage(
        paths[2],
        StagePlan(
            "finetune", "train", all_kinds,
            weights={"trigger_id": 3.0}, augment=no_aug, trigger_augment=no_aug,
        ),
        train, catalog, index, seed=3,
    )
    assert total >= 500
    return [str(p) for p in paths]


@pytest.fixture(scope="session")
def toy_run(stage_files, tmp_path_factory):
    """One toy training run shared by the training and serving tests."""
    out = tmp_path_factory.mktemp("ckpt") / "toy"
    run = TrainRun(
        stage_files=tuple(stage_files),
        output_dir=str(out),
        learning_rate=1e-3,
        batch_size=8,
        epochs_per_stage=1,
        seed=7,
    )
    result = fine_tune(run)
    return run, result

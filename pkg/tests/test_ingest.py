from __future__ import annotations

import json
import xml.etree.ElementTree as ET

import pytest

from frameparse.ingest import (
    IngestError,
    IngestReport,
    SplitConfig,
    default_split_config,
    load_exemplars,
    load_frame_catalog,
    load_fulltext,
    load_propbank_records,
    split_sentences,
)
from frameparse.model import (
    AnnotatedSentence,
    FrameAnnotation,
    dumps_record,
    sentence_from_record,
    sentence_to_record,
)
from tests.conftest import FRAMENET_MINI


def _recount_fulltext_sentences(path) -> int:
    """Independent oracle: count sentence elements straight off the XML."""
    count = 0
    for doc in sorted((path / "fulltext").glob("*.xml")):
        root = ET.parse(doc).getroot()
        count += sum(1 for el in root.iter() if el.tag.split("}")[-1] == "sentence")
    return count


def _recount_exemplar_annotation_sets(path) -> int:
    count = 0
    for doc in sorted((path / "lu").glob("*.xml")):
        root = ET.parse(doc).getroot()
        for el in root.iter():
            if el.tag.split("}")[-1] == "annotationSet" and el.get("status") != "UNANN":
                count += 1
    return count


class TestCatalog:
    def test_attack_lus_present(self, catalog):
        attack = catalog.get("Attack")
        for lu in ("ambush.n", "ambush.v", "assault.v", "attack.v", "attack.n", "bomb.v"):
            assert lu in attack.lexical_units

    def test_attempt_means_element_order_preserved(self, catalog):
        assert catalog.get("Attempt_means").elements == (
            "Agent", "Means", "Goal", "Circumstances", "Degree", "Depictive",
            "Domain", "Duration", "Frequency", "Manner", "Outcome",
            "Particular_iteration", "Place", "Purpose", "Time",
        )

    def test_missing_directory_is_fatal(self, tmp_path):
        with pytest.raises(IngestError):
            load_frame_catalog(tmp_path / "nope")

    def test_empty_frames_dir_warns(self, tmp_path):
        (tmp_path / "frame").mkdir()
        cat, report = load_frame_catalog(tmp_path)
        assert len(cat) == 0
        assert report.warnings

    def test_malformed_frame_file_names_the_file(self, tmp_path):
        (tmp_path / "frame").mkdir()
        bad = tmp_path / "frame" / "Broken.xml"
        bad.write_text("<frame name='Broken'><unclosed>", encoding="utf-8")
        with pytest.raises(IngestError) as err:
            load_frame_catalog(tmp_path)
        assert "Broken.xml" in str(err.value)


class TestFulltext:
    def test_sentence_count_matches_independent_recount(self, fulltext):
        assert len(fulltext) == _recount_fulltext_sentences(FRAMENET_MINI)

    def test_zero_annotation_sentence_retained(self, fulltext):
        blank = [s for s in fulltext if not s.annotations]
        assert blank, "the corpus keeps annotation-free sentences"

    def test_offsets_converted_to_half_open(self, fulltext):
        s = next(x for x in fulltext if x.sentence_id == "100")
        ann = s.annotations[0]
        assert s.text[ann.trigger_start:ann.trigger_end] == "trying"
        assert s.text[ann.elements[0].start:ann.elements[0].end] == "the lift"

    def test_unknown_frame_annotation_dropped(self, catalog, tmp_path):
        src = (FRAMENET_MINI / "fulltext" / "Mini__TestStories.xml").read_text(encoding="utf-8")
        (tmp_path / "fulltext").mkdir()
        (tmp_path / "fulltext" / "Doc__X.xml").write_text(
            src.replace('frameName="Theft"', 'frameName="Nonexistent"'), encoding="utf-8"
        )
        sentences, report = load_fulltext(tmp_path, catalog)
        assert report.dropped_annotations == 1
        assert all(a.frame != "Nonexistent" for s in sentences for a in s.annotations)

    def test_corrupt_offsets_reject_sentence(self, catalog, tmp_path):
        src = (FRAMENET_MINI / "fulltext" / "Mini__TestStories.xml").read_text(encoding="utf-8")
        (tmp_path / "fulltext").mkdir()
        (tmp_path / "fulltext" / "Doc__X.xml").write_text(
            src.replace('start="8" end="13"', 'start="8" end="999"'), encoding="utf-8"
        )
        sentences, report = load_fulltext(tmp_path, catalog)
        assert report.rejected_sentences == 1
        assert all(s.sentence_id != "300" for s in sentences)

    def test_deterministic_ordering(self, catalog):
        a, _ = load_fulltext(FRAMENET_MINI, catalog)
        b, _ = load_fulltext(FRAMENET_MINI, catalog)
        assert a == b
        keys = [(s.doc_id, int(s.sentence_id)) for s in a]
        assert keys == sorted(keys)


class TestExemplars:
    def test_single_annotation_enforced(self, exemplars):
        assert all(len(s.annotations) == 1 for s in exemplars)

    def test_multi_annotation_exemplar_rejected(self, catalog):
        _, report = load_exemplars(FRAMENET_MINI, catalog)
        assert report.rejected_sentences == 1
        assert any("2 annotations" in w for w in report.warnings)

    def test_count_matches_recount_minus_rejections(self, exemplars, catalog):
        total = _recount_exemplar_annotation_sets(FRAMENET_MINI)
        _, report = load_exemplars(FRAMENET_MINI, catalog)
        # The bad file holds two annotation sets on one rejected sentence.
        assert len(exemplars) == total - 2

    def test_exemplar_without_elements_valid(self, exemplars):
        assert any(not s.annotations[0].elements for s in exemplars)


class TestPropBank:
    def test_hand_constructed_record_round_trips(self, tmp_path):
        rec = {
            "text": "He sold the car.",
            "doc_id": "pb",
            "sentence_id": "1",
            "annotations": [
                {
                    "frame": "sell.01",
                    "trigger": [3, 7],
                    "elements": [
                        {"name": "ARG0", "start": 0, "end": 2},
                        {"name": "ARG1", "start": 8, "end": 15},
                    ],
                }
            ],
        }
        path = tmp_path / "pb.jsonl"
        path.write_text(json.dumps(rec) + "\n", encoding="utf-8")
        sentences, pb_catalog, report = load_propbank_records(path)
        assert len(sentences) == 1
        s = sentences[0]
        assert s.source == "propbank"
        assert s.text[3:7] == "sold"
        assert {e.element for e in s.annotations[0].elements} == {"ARG0", "ARG1"}
        # Round-trip through the JSONL schema is identity.
        assert sentence_from_record(sentence_to_record(s)) == s
        # Synthetic catalog: roleset as frame, labels as elements.
        frame = pb_catalog.get("sell.01")
        assert frame.elements == ("ARG0", "ARG1")
        assert frame.lexical_units == ("sell.01",)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "pb.jsonl"
        path.write_text("", encoding="utf-8")
        sentences, _, report = load_propbank_records(path)
        assert sentences == []

    def test_malformed_line_skipped_with_line_number(self, tmp_path):
        path = tmp_path / "pb.jsonl"
        path.write_text('not json\n{"text": "Ok.", "annotations": []}\n', encoding="utf-8")
        sentences, _, report = load_propbank_records(path)
        assert len(sentences) == 1
        assert any(":1:" in w for w in report.warnings)

    def test_overlapping_args_accepted(self, tmp_path):
        rec = {
            "text": "He sold the car.",
            "annotations": [
                {
                    "frame": "sell.01",
                    "trigger": [3, 7],
                    "elements": [
                        {"name": "ARG1", "start": 8, "end": 15},
                        {"name": "ARGM-LOC", "start": 8, "end": 15},
                    ],
                }
            ],
        }
        path = tmp_path / "pb.jsonl"
        path.write_text(json.dumps(rec) + "\n", encoding="utf-8")
        sentences, _, _ = load_propbank_records(path)
        assert len(sentences[0].annotations[0].elements) == 2


class TestSplits:
    def test_direct_partition(self, fulltext):
        cfg = SplitConfig(dev_docs=("Mini__DevStories",), test_docs=("Mini__TestStories",))
        splits = split_sentences(fulltext, cfg)
        assert {s.doc_id for s in splits.dev} == {"Mini__DevStories"}
        assert {s.doc_id for s in splits.test} == {"Mini__TestStories"}
        assert {s.doc_id for s in splits.train} == {"Mini__ElevatorStory"}

    def test_partition_property(self, fulltext, exemplars):
        cfg = SplitConfig(dev_docs=("Mini__DevStories",), test_docs=("Mini__TestStories",))
        sentences = list(fulltext) + list(exemplars)
        splits = split_sentences(sentences, cfg)
        combined = list(splits.train) + list(splits.dev) + list(splits.test)
        assert len(combined) == len(sentences)
        assert {id(s) for s in combined} == {id(s) for s in sentences}

    def test_exemplar_always_train(self, exemplars):
        doc = exemplars[0].doc_id
        cfg = SplitConfig(dev_docs=(doc,), test_docs=())
        splits = split_sentences(exemplars, cfg)
        assert not splits.dev
        assert len(splits.train) == len(exemplars)

    def test_overlapping_dev_test_rejected(self):
        with pytest.raises(Exception):
            SplitConfig(dev_docs=("A",), test_docs=("A",))

    def test_missing_doc_warns(self, fulltext):
        cfg = SplitConfig(dev_docs=("NoSuchDoc",), test_docs=())
        report = IngestReport()
        split_sentences(fulltext, cfg, report)
        assert any("NoSuchDoc" in w for w in report.warnings)

    def test_bundled_split_config_shape(self):
        cfg = default_split_config()
        assert len(cfg.dev_docs) == 8
        assert len(cfg.test_docs) == 25
        assert not set(cfg.dev_docs) & set(cfg.test_docs)

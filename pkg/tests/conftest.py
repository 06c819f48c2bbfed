from __future__ import annotations

import pytest

from frameparse.ingest import load_exemplars, load_frame_catalog, load_fulltext
from frameparse.luindex import build_index
from frameparse.model import AnnotatedSentence, ElementSpan, FrameAnnotation

from pathlib import Path

FIXTURES = Path(__file__).parent / "fixtures"
FRAMENET_MINI = FIXTURES / "framenet_mini"

EXAMPLE_TEXT = "It was no use trying the lift."

# Byte-exact prompt/output exchanges for the example sentence.
GOLDEN_TRIGGER_INPUT = "TRIGGER: It was no use trying the lift."
GOLDEN_TRIGGER_OUTPUT = "It was no use *trying the *lift."
GOLDEN_FRAME_TRYING_INPUT = (
    "FRAME Attempt Attempt_means Operational_testing Tasting Trial "
    "Try_defendant Trying_out: It was no use *trying the lift."
)
GOLDEN_FRAME_TRYING_OUTPUT = "Attempt_means"
GOLDEN_FRAME_LIFT_INPUT = (
    "FRAME Body_movement Building_subparts Cause_motion Cause_to_end "
    "Connecting_architecture Theft: It was no use trying the *lift."
)
GOLDEN_FRAME_LIFT_OUTPUT = "Connecting_architecture"
GOLDEN_ARGS_TRYING_INPUT = (
    "ARGS Attempt_means | Agent Means Goal Circumstances Degree Depictive Domain "
    "Duration Frequency Manner Outcome Particular_iteration Place Purpose Time: "
    "It was no use *trying the lift."
)
GOLDEN_ARGS_TRYING_OUTPUT = 'Means="the lift"'
GOLDEN_ARGS_LIFT_INPUT = (
    "ARGS Connecting_architecture | Part Connected_locations Creator Descriptor "
    "Direction Goal Material Orientation Source Whole: "
    "It was no use trying the *lift."
)
GOLDEN_ARGS_LIFT_OUTPUT = 'Part="the lift"'


@pytest.fixture(scope="session")
def catalog():
    cat, report = load_frame_catalog(FRAMENET_MINI)
    assert not report.warnings
    return cat


@pytest.fixture(scope="session")
def index(catalog):
    return build_index(catalog)


@pytest.fixture(scope="session")
def fulltext(catalog):
    sentences, _report = load_fulltext(FRAMENET_MINI, catalog)
    return sentences


@pytest.fixture(scope="session")
def exemplars(catalog):
    sentences, _report = load_exemplars(FRAMENET_MINI, catalog)
    return sentences


@pytest.fixture(scope="session")
def example_sentence() -> AnnotatedSentence:
    """The two-annotation example sentence, built by hand."""
    return AnnotatedSentence(
        text=EXAMPLE_TEXT,
        annotations=(
            FrameAnnotation("Attempt_means", 14, 20, (ElementSpan("Means", 21, 29),)),
            FrameAnnotation("Connecting_architecture", 25, 29, (ElementSpan("Part", 21, 29),)),
        ),
        doc_id="Mini__ElevatorStory",
        sentence_id="100",
        source="fulltext",
    )

import json
from pathlib import Path

import pytest

import fixture_data as fd
from pattern_pilot import (
    EventLog,
    InternalContext,
    Preferences,
    Trace,
    TraceStep,
    load_context_catalog,
    mine_repository,
    parse_log,
    step_from_dict,
)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def c1_log() -> EventLog:
    return parse_log(fd.jsonl(fd.c1_events()))


@pytest.fixture
def c2_log() -> EventLog:
    return parse_log(fd.jsonl(fd.c2_events()))


@pytest.fixture
def full_log() -> EventLog:
    log = parse_log(fd.jsonl(fd.c1_events()) + fd.jsonl(fd.c2_events()))
    for ctx in load_context_catalog(fd.CONTEXTS).values():
        log.register_context(ctx)
    return log


@pytest.fixture
def repo(full_log):
    return mine_repository(full_log, Preferences())


@pytest.fixture
def email_selection_step() -> TraceStep:
    return step_from_dict({
        "activity": "partner selection",
        "participants": ["P2"],
        "tool": "search engine",
        "data": ["localization criteria"],
        "attrs": {"mode": "email"},
    })


def make_trace(case_id, activities, context_id="c1", status="completed"):
    """Bare trace from activity names, empty internal contexts."""
    steps = [TraceStep(a, InternalContext.of({})) for a in activities]
    return Trace(case_id=case_id, steps=steps, external_context_id=context_id,
                 status=status)


@pytest.fixture
def fixture_paths(tmp_path):
    """Copies of the checked-in fixture files in a scratch directory."""
    paths = {}
    for name in ("c1.jsonl", "c2.jsonl", "contexts.json"):
        target = tmp_path / name
        target.write_text((FIXTURES / name).read_text())
        paths[name] = target
    paths["both.jsonl"] = tmp_path / "both.jsonl"
    paths["both.jsonl"].write_text(
        (FIXTURES / "c1.jsonl").read_text() + (FIXTURES / "c2.jsonl").read_text())
    return paths


def test_checked_in_fixtures_match_builder():
    assert (FIXTURES / "c1.jsonl").read_text() == fd.jsonl(fd.c1_events())
    assert (FIXTURES / "c2.jsonl").read_text() == fd.jsonl(fd.c2_events())
    assert json.loads((FIXTURES / "contexts.json").read_text()) == fd.CONTEXTS

import json

import pytest
from click.testing import CliRunner

import fixture_data as fd
from pattern_pilot.cli import main

EMAIL_TRACE_LINE = json.dumps({
    "case_id": "req-1", "seq": 1, "activity": "partner selection",
    "participants": ["P2"], "tool": "search engine",
    "data": ["localization criteria"], "attrs": {"mode": "email"},
    "external_context": "c1",
})


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def mined_repo_path(runner, fixture_paths, tmp_path):
    out = tmp_path / "repo.json"
    result = runner.invoke(main, [
        "mine", "--log", str(fixture_paths["both.jsonl"]),
        "--contexts", str(fixture_paths["contexts.json"]),
        "--out", str(out)])
    assert result.exit_code == 0, result.output
    return out


@pytest.fixture
def email_trace_path(tmp_path):
    path = tmp_path / "trace.jsonl"
    path.write_text(EMAIL_TRACE_LINE + "\n")
    return path


class TestMine:
    def test_fixture_counts(self, runner, fixture_paths, tmp_path):
        out = tmp_path / "repo.json"
        result = runner.invoke(main, [
            "mine", "--log", str(fixture_paths["c1.jsonl"]),
            "--min-support", "3", "--min-length", "2",
            "--out", str(out)])
        assert result.exit_code == 0
        assert "c1: 3 patterns" in result.output
        repo = json.loads(out.read_text())
        assert len(repo["patterns"]) == 3

    def test_empty_log(self, runner, tmp_path):
        empty = tmp_path / "empty.jsonl"
        empty.write_text("")
        result = runner.invoke(main, [
            "mine", "--log", str(empty), "--out", str(tmp_path / "r.json")])
        assert result.exit_code == 0
        assert "0 patterns" in result.output

    def test_broken_log_exits_one_with_line(self, runner, tmp_path):
        broken = tmp_path / "broken.jsonl"
        broken.write_text("not json\n")
        result = runner.invoke(main, [
            "mine", "--log", str(broken), "--out", str(tmp_path / "r.json")])
        assert result.exit_code == 1
        assert "line 1" in result.output

    def test_repository_json_deterministic(self, runner, fixture_paths, tmp_path):
        outputs = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            result = runner.invoke(main, [
                "mine", "--log", str(fixture_paths["both.jsonl"]),
                "--contexts", str(fixture_paths["contexts.json"]),
                "--out", str(out)])
            assert result.exit_code == 0
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]


class TestRecommend:
    def test_email_scenario(self, runner, mined_repo_path, email_trace_path):
        result = runner.invoke(main, [
            "recommend", "--patterns", str(mined_repo_path),
            "--trace", str(email_trace_path), "--context", "c1"])
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert [i["confidence"] for i in body["items"]] == [1.0, 0.75]
        assert [t["activity"] for t in body["items"][0]["continuation"]] == \
            list(fd.PATTERN_C[2:])

    def test_table_format(self, runner, mined_repo_path, email_trace_path):
        result = runner.invoke(main, [
            "--format", "table",
            "recommend", "--patterns", str(mined_repo_path),
            "--trace", str(email_trace_path), "--context", "c1"])
        assert result.exit_code == 0
        assert "1. [1.00]" in result.output
        assert "2. [0.75]" in result.output

    def test_top_k_one(self, runner, mined_repo_path, email_trace_path):
        result = runner.invoke(main, [
            "recommend", "--patterns", str(mined_repo_path),
            "--trace", str(email_trace_path), "--context", "c1",
            "--top-k", "1"])
        assert len(json.loads(result.output)["items"]) == 1

    def test_no_candidates_exit_two(self, runner, mined_repo_path, tmp_path):
        trace = tmp_path / "other.jsonl"
        trace.write_text(json.dumps({
            "case_id": "r", "seq": 1, "activity": "unrelated",
            "external_context": "c1"}) + "\n")
        result = runner.invoke(main, [
            "recommend", "--patterns", str(mined_repo_path),
            "--trace", str(trace), "--context", "c1"])
        assert result.exit_code == 2
        assert json.loads(result.output) == {"items": []}

    def test_missing_repo_exit_one(self, runner, email_trace_path, tmp_path):
        result = runner.invoke(main, [
            "recommend", "--patterns", str(tmp_path / "nope.json"),
            "--trace", str(email_trace_path), "--context", "c1"])
        assert result.exit_code == 1

    def test_what_if_context_file(self, runner, mined_repo_path, email_trace_path,
                                  tmp_path):
        ctx_file = tmp_path / "whatif.json"
        ctx_file.write_text(json.dumps(
            {"id": "c2-like", "attributes": fd.C2_LIKE_ATTRS}))
        result = runner.invoke(main, [
            "recommend", "--patterns", str(mined_repo_path),
            "--trace", str(email_trace_path), "--context", "c2-like",
            "--context-file", str(ctx_file)])
        body = json.loads(result.output)
        assert len(body["items"]) == 1
        assert body["items"][0]["confidence"] == 0.75


class TestReplay:
    def test_step_two_matches_recommend(self, runner, mined_repo_path,
                                        fixture_paths, tmp_path):
        replayed = runner.invoke(main, [
            "replay", "--log", str(fixture_paths["c1.jsonl"]),
            "--case", "c1-email-1", "--patterns", str(mined_repo_path)])
        assert replayed.exit_code == 0
        lines = [json.loads(l) for l in replayed.output.splitlines()]
        step2 = next(l for l in lines if l["step"] == 2)
        # equivalent request: the first two recorded steps of the case
        prefix = tmp_path / "prefix.jsonl"
        case_lines = [l for l in fixture_paths["c1.jsonl"].read_text().splitlines()
                      if json.loads(l)["case_id"] == "c1-email-1"]
        prefix.write_text("\n".join(case_lines[:2]) + "\n")
        direct = runner.invoke(main, [
            "recommend", "--patterns", str(mined_repo_path),
            "--trace", str(prefix), "--context", "c1"])
        assert step2["items"] == json.loads(direct.output)["items"]
        assert [i["confidence"] for i in step2["items"]] == [1.0, 0.75]

    def test_one_step_case(self, runner, mined_repo_path, tmp_path):
        log = tmp_path / "one.jsonl"
        log.write_text(json.dumps({
            "case_id": "solo", "seq": 1, "activity": "partner search",
            "external_context": "c1"}) + "\n")
        result = runner.invoke(main, [
            "replay", "--log", str(log), "--case", "solo",
            "--patterns", str(mined_repo_path)])
        assert result.exit_code == 0
        assert len(result.output.splitlines()) == 1

    def test_final_step_empty(self, runner, mined_repo_path, fixture_paths):
        result = runner.invoke(main, [
            "replay", "--log", str(fixture_paths["c1.jsonl"]),
            "--case", "c1-email-1", "--patterns", str(mined_repo_path)])
        last = json.loads(result.output.splitlines()[-1])
        assert last == {"step": 7, "items": []}

    def test_unknown_case_exit_one(self, runner, mined_repo_path, fixture_paths):
        result = runner.invoke(main, [
            "replay", "--log", str(fixture_paths["c1.jsonl"]),
            "--case", "nope", "--patterns", str(mined_repo_path)])
        assert result.exit_code == 1

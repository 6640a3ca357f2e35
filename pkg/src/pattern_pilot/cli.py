"""Command line interface: mine, recommend, replay, serve."""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .errors import DomainError, NotFoundError, PatternPilotError
from .event_log import ExternalContext, load_context_catalog, parse_log
from .mining import load_repository, mine_repository, save_repository
from .preferences import Preferences
from .recommend import (
    RecommendationRequest,
    canonical_json,
    recommend as make_recommendations,
    replay as replay_case,
    response_dict,
)


def _load_prefs(path: str | None) -> Preferences:
    if path is None:
        return Preferences()
    return Preferences.from_dict(json.loads(Path(path).read_text()))


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


@click.group()
@click.option("--prefs", "prefs_path", type=click.Path(exists=True), default=None,
              help="Preferences JSON file.")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json",
              help="Output format for recommendation listings.")
@click.pass_context
def main(ctx, prefs_path, fmt):
    """Activity-pattern mining and recommendation for collaborative process logs."""
    ctx.ensure_object(dict)
    ctx.obj["prefs_path"] = prefs_path
    ctx.obj["format"] = fmt


@main.command()
@click.option("--log", "log_path", required=True, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--contexts", "contexts_path", type=click.Path(), default=None,
              help="External-context catalog JSON ({id: {attr: value}}).")
@click.option("--min-support", type=int, default=None)
@click.option("--min-length", type=int, default=None)
@click.pass_context
def mine(ctx, log_path, out_path, contexts_path, min_support, min_length):
    """Mine a pattern repository from a JSONL event log."""
    try:
        prefs = _load_prefs(ctx.obj["prefs_path"])
        overrides = {}
        if min_support is not None:
            overrides["min_support"] = min_support
        if min_length is not None:
            overrides["min_length"] = min_length
        if overrides:
            prefs = Preferences.from_dict({**prefs.to_dict(), **overrides})
        log = parse_log(Path(log_path).read_bytes())
        if contexts_path:
            for c in load_context_catalog(json.loads(Path(contexts_path).read_text())).values():
                log.register_context(c)
        repo = mine_repository(log, prefs)
        save_repository(repo, out_path)
    except (PatternPilotError, OSError, json.JSONDecodeError) as exc:
        _fail(str(exc))
    counts = repo.counts_by_context()
    if not counts:
        click.echo("0 patterns")
    for context_id in sorted(counts):
        click.echo(f"{context_id}: {counts[context_id]} patterns")


def _trace_steps_from_jsonl(path: str):
    log = parse_log(Path(path).read_bytes())
    case_ids = log.case_ids
    if len(case_ids) > 1:
        raise DomainError(f"trace file contains {len(case_ids)} cases, expected one")
    if not case_ids:
        return []
    return log.trace(case_ids[0]).steps


def _print_items(items, fmt):
    if fmt == "json":
        click.echo(canonical_json(response_dict(items)))
        return
    if not items:
        click.echo("(no recommendations)")
        return
    for rank, item in enumerate(items, start=1):
        names = " -> ".join(t.activity for t in item.continuation)
        click.echo(f"{rank}. [{item.confidence:.2f}] {names}")
        click.echo(f"   {item.justification}")


@main.command(name="recommend")
@click.option("--patterns", "repo_path", required=True, type=click.Path())
@click.option("--trace", "trace_path", required=True, type=click.Path())
@click.option("--context", "context_id", required=True)
@click.option("--context-file", "context_file", type=click.Path(), default=None,
              help="JSON {id, attributes} overriding the request context.")
@click.option("--participant", default=None)
@click.option("--top-k", type=int, default=None)
@click.pass_context
def recommend_cmd(ctx, repo_path, trace_path, context_id, context_file,
                  participant, top_k):
    """Rank pattern continuations for an ongoing trace. Exit 2 when empty."""
    try:
        repo = load_repository(repo_path)
        prefs = (_load_prefs(ctx.obj["prefs_path"])
                 if ctx.obj["prefs_path"] else repo.preferences)
        if top_k is not None:
            prefs = Preferences.from_dict({**prefs.to_dict(), "top_k": top_k})
        steps = _trace_steps_from_jsonl(trace_path)
        if context_file:
            obj = json.loads(Path(context_file).read_text())
            external = ExternalContext.of(obj.get("id", context_id),
                                          obj.get("attributes", {}))
        else:
            external = repo.context_of(context_id)
        request = RecommendationRequest(steps=steps, external_context=external,
                                        requesting_participant=participant)
        items = make_recommendations(request, repo, prefs)
    except (PatternPilotError, OSError, json.JSONDecodeError) as exc:
        _fail(str(exc))
    _print_items(items, ctx.obj["format"])
    if not items:
        sys.exit(2)


@main.command()
@click.option("--log", "log_path", required=True, type=click.Path())
@click.option("--case", "case_id", required=True)
@click.option("--patterns", "repo_path", required=True, type=click.Path())
@click.pass_context
def replay(ctx, log_path, case_id, repo_path):
    """Stream per-prefix recommendations for one recorded case."""
    try:
        log = parse_log(Path(log_path).read_bytes())
        repo = load_repository(repo_path)
        prefs = (_load_prefs(ctx.obj["prefs_path"])
                 if ctx.obj["prefs_path"] else repo.preferences)
        steps = replay_case(log, case_id, repo, prefs)
    except (NotFoundError, PatternPilotError, OSError, json.JSONDecodeError) as exc:
        _fail(str(exc))
    fmt = ctx.obj["format"]
    for step_index, items in steps:
        if fmt == "json":
            click.echo(canonical_json({"step": step_index,
                                       **response_dict(items)}))
        else:
            click.echo(f"-- step {step_index}")
            _print_items(items, fmt)


@main.command()
@click.option("--data-dir", type=click.Path(), default=None,
              help="Defaults to $PATTERN_PILOT_DATA_DIR.")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=None,
              help="Defaults to $PATTERN_PILOT_PORT or 8000.")
@click.pass_context
def serve(ctx, data_dir, host, port):
    """Run the HTTP API server."""
    import uvicorn

    from .service import ServiceConfig, create_app

    data_dir = data_dir or os.environ.get("PATTERN_PILOT_DATA_DIR")
    if not data_dir:
        _fail("--data-dir or PATTERN_PILOT_DATA_DIR is required")
    port = port or int(os.environ.get("PATTERN_PILOT_PORT", "8000"))
    prefs_path = ctx.obj["prefs_path"]
    try:
        app = create_app(ServiceConfig(
            data_dir=Path(data_dir), host=host, port=port,
            prefs_path=Path(prefs_path) if prefs_path else None))
    except PatternPilotError as exc:
        _fail(str(exc))
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()

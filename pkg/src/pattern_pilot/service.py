"""HTTP API (/api/v1) over file-based storage in a data directory.

Layout of the data directory:
    events.jsonl     append-only event log
    contexts.json    optional external-context catalog {"c1": {...}, ...}
    repository.json  last mined pattern repository
    preferences.json optional default preferences

Ingestion is serialized through a single writer lock; mining runs one job
at a time (a second mine request gets 409 BUSY); recommendation reads use
the last committed repository snapshot.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from .discovery import discover_model
from .errors import BusyError, NotFoundError, PatternPilotError, SchemaError
from .event_log import (
    EventLog,
    ExternalContext,
    event_from_dict,
    event_to_dict,
    load_context_catalog,
    parse_log,
    step_from_dict,
)
from .mining import PatternRepository, load_repository, mine_repository, save_repository
from .preferences import Preferences
from .recommend import RecommendationRequest, canonical_json, recommend, response_dict

STATUS_BY_CODE = {
    "PARSE": 400,
    "SCHEMA": 400,
    "DUPLICATE_EVENT": 409,
    "ORDERING": 409,
    "DOMAIN": 400,
    "NOT_FOUND": 404,
    "VERSION": 400,
    "BUSY": 409,
    "INTERNAL": 500,
}


@dataclass
class ServiceConfig:
    data_dir: Path
    host: str = "127.0.0.1"
    port: int = 8000
    prefs_path: Path | None = None


class ServiceState:
    def __init__(self, config: ServiceConfig):
        self.config = config
        data_dir = Path(config.data_dir)
        if not data_dir.is_dir():
            raise PatternPilotError(f"data_dir {data_dir} does not exist")
        probe = data_dir / ".writable"
        try:
            probe.touch()
            probe.unlink()
        except OSError as exc:
            raise PatternPilotError(f"data_dir {data_dir} is not writable: {exc}")
        self.data_dir = data_dir
        self.events_path = data_dir / "events.jsonl"
        self.repo_path = data_dir / "repository.json"
        self.write_lock = threading.Lock()
        self.mine_lock = threading.Lock()

        self.log = (parse_log(self.events_path.read_bytes())
                    if self.events_path.exists() else EventLog())
        contexts_path = data_dir / "contexts.json"
        if contexts_path.exists():
            catalog = load_context_catalog(json.loads(contexts_path.read_text()))
            for ctx in catalog.values():
                self.log.register_context(ctx)
        prefs_path = config.prefs_path or data_dir / "preferences.json"
        self.default_prefs = (Preferences.from_dict(json.loads(Path(prefs_path).read_text()))
                              if Path(prefs_path).exists() else Preferences())
        self.repo: PatternRepository | None = (
            load_repository(self.repo_path) if self.repo_path.exists() else None)

    def require_repo(self) -> PatternRepository:
        if self.repo is None:
            raise NotFoundError("no pattern repository mined yet")
        return self.repo


def _parse_external_context(obj) -> ExternalContext:
    if isinstance(obj, str):
        return ExternalContext.of(obj)
    if isinstance(obj, dict) and isinstance(obj.get("id"), str):
        attrs = obj.get("attributes", {})
        if not isinstance(attrs, dict):
            raise SchemaError("external_context.attributes must be an object",
                              field="external_context")
        return ExternalContext.of(obj["id"], {str(k): str(v) for k, v in attrs.items()})
    raise SchemaError("external_context must be an id string or {id, attributes}",
                      field="external_context")


def create_app(config: ServiceConfig) -> FastAPI:
    state = ServiceState(config)
    app = FastAPI(title="pattern-pilot")
    app.state.service = state

    @app.exception_handler(PatternPilotError)
    async def _handle_error(request: Request, exc: PatternPilotError):
        body = {"error": {"code": exc.code, "message": exc.message}}
        locus = exc.locus()
        if locus:
            body["error"]["locus"] = locus
        return JSONResponse(status_code=STATUS_BY_CODE.get(exc.code, 500), content=body)

    @app.get("/api/v1/health")
    async def health():
        patterns = len(state.repo.patterns) if state.repo else 0
        return {"status": "ok", "patterns": patterns, "events": len(state.log)}

    @app.post("/api/v1/events", status_code=201)
    async def ingest(request: Request):
        body = await request.json()
        if not isinstance(body, list):
            raise SchemaError("request body must be an array of events")
        events = [event_from_dict(obj, line=idx + 1) for idx, obj in enumerate(body)]
        with state.write_lock:
            state.log.append_all(events)
            with open(state.events_path, "a", encoding="utf-8") as fh:
                for e in events:
                    fh.write(json.dumps(event_to_dict(e), sort_keys=True) + "\n")
        return {"accepted": len(events)}

    @app.post("/api/v1/mine")
    async def mine(request: Request):
        body = await request.json() if await request.body() else {}
        prefs = (Preferences.from_dict(body.get("preferences"))
                 if isinstance(body, dict) and body.get("preferences") is not None
                 else state.default_prefs)
        if not state.mine_lock.acquire(blocking=False):
            raise BusyError("a mining job is already running")
        try:
            repo = mine_repository(state.log, prefs)
            save_repository(repo, state.repo_path)
            state.repo = repo
        finally:
            state.mine_lock.release()
        return {"patterns_by_context": repo.counts_by_context()}

    @app.get("/api/v1/patterns")
    async def patterns(context: str | None = None):
        repo = state.require_repo()
        selected = repo.by_context(context) if context is not None else repo.patterns
        return {
            "version": 1,
            "preferences": repo.preferences.to_dict(),
            "mined_at": repo.mined_at,
            "patterns": [p.to_dict() for p in selected],
        }

    @app.get("/api/v1/model")
    async def model(context: str | None = None):
        traces = state.log.traces()
        if context is not None:
            traces = [t for t in traces if t.external_context_id == context]
        return discover_model(traces).to_dict()

    @app.get("/api/v1/cases")
    async def cases():
        return {"cases": [
            {"case_id": t.case_id, "external_context": t.external_context_id,
             "status": t.status, "length": len(t.steps)}
            for t in state.log.traces()
        ]}

    @app.get("/api/v1/cases/{case_id}")
    async def case(case_id: str):
        t = state.log.trace(case_id)
        return {
            "case_id": t.case_id,
            "external_context": t.external_context_id,
            "status": t.status,
            "steps": [{"activity": s.activity, "context": s.context.as_dict()}
                      for s in t.steps],
        }

    @app.post("/api/v1/recommendations")
    async def recommendations(request: Request):
        body = await request.json()
        if not isinstance(body, dict):
            raise SchemaError("request body must be an object")
        steps_obj = body.get("trace", [])
        if not isinstance(steps_obj, list):
            raise SchemaError("'trace' must be an array of steps", field="trace")
        steps = [step_from_dict(s, line=idx + 1) for idx, s in enumerate(steps_obj)]
        if "external_context" not in body:
            raise SchemaError("missing required field 'external_context'",
                              field="external_context")
        ctx = _parse_external_context(body["external_context"])
        if isinstance(body["external_context"], str) and ctx.id in state.log.context_catalog:
            ctx = state.log.context_catalog[ctx.id]
        prefs_override = (Preferences.from_dict(body["preferences"])
                          if body.get("preferences") is not None else None)
        req = RecommendationRequest(
            steps=steps, external_context=ctx,
            requesting_participant=body.get("participant"),
            prefs_override=prefs_override)
        items = recommend(req, state.require_repo())
        return Response(content=canonical_json(response_dict(items)),
                        media_type="application/json")

    return app

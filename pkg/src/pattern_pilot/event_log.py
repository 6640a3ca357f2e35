"""Event log data model: events, traces, external contexts, JSONL parsing.

One event per JSONL line:

    {"case_id": "c1-01", "seq": 1, "activity": "partner search",
     "participants": ["P2"], "tool": "search engine",
     "data": ["localization criteria"], "attrs": {"mode": "manual"},
     "external_context": "c1", "timestamp": "2011-03-01T10:00:00Z",
     "lifecycle": "step"}

Required fields: case_id, seq, activity, external_context. The
participants/tool/data lists and every attrs key fold into the event's
internal context dimensions. Unknown fields are ignored.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .errors import DomainError, IntegrityError, OrderingError, ParseError, SchemaError
from .preferences import SuccessPredicate

LIFECYCLE_STEP = "step"
LIFECYCLE_CASE_END = "case_end"

STATUS_ONGOING = "ongoing"
STATUS_COMPLETED = "completed"

OUTCOME_UNKNOWN = "unknown"
OUTCOME_SUCCESS = "success"
OUTCOME_FAILURE = "failure"


def normalize_activity(name: str) -> str:
    """NFC-normalize and trim; activity names compare case-sensitively."""
    return unicodedata.normalize("NFC", name).strip()


@dataclass(frozen=True)
class InternalContext:
    """Per-activity execution context: dimension name -> finite value set."""

    dimensions: tuple[tuple[str, frozenset[str]], ...] = ()

    @classmethod
    def of(cls, mapping) -> "InternalContext":
        dims = []
        for name in sorted(mapping):
            if not name:
                raise SchemaError("internal context dimension name is empty")
            dims.append((name, frozenset(mapping[name])))
        return cls(tuple(dims))

    def values(self, dim: str) -> frozenset[str]:
        for name, vals in self.dimensions:
            if name == dim:
                return vals
        return frozenset()

    def as_dict(self) -> dict[str, list[str]]:
        return {name: sorted(vals) for name, vals in self.dimensions}


@dataclass(frozen=True)
class ExternalContext:
    """Environment descriptor a process runs in, e.g. id 'c1'."""

    id: str
    attributes: tuple[tuple[str, str], ...] = ()

    @classmethod
    def of(cls, id, attributes=None) -> "ExternalContext":
        attrs = attributes or {}
        return cls(id, tuple(sorted(attrs.items())))

    def attribute_pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset(self.attributes)

    def as_dict(self) -> dict:
        return {"id": self.id, "attributes": dict(self.attributes)}


@dataclass(frozen=True)
class Event:
    case_id: str
    seq: int
    activity: str
    internal_context: InternalContext
    external_context_id: str
    timestamp: str | None = None
    lifecycle: str = LIFECYCLE_STEP


@dataclass(frozen=True)
class TraceStep:
    activity: str
    context: InternalContext


@dataclass
class Trace:
    """One process instance: the ordered activity executions of a case."""

    case_id: str
    steps: list[TraceStep]
    external_context_id: str
    status: str = STATUS_ONGOING
    outcome: str = OUTCOME_UNKNOWN
    started_at: str | None = None
    ended_at: str | None = None

    @property
    def activities(self) -> list[str]:
        return [s.activity for s in self.steps]


def _require(obj, key, line):
    if key not in obj or obj[key] is None:
        raise SchemaError(f"missing required field '{key}'", line=line, field=key)
    return obj[key]


def _string_list(value, key, line):
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SchemaError(f"'{key}' must be a list of strings", line=line, field=key)
    return value


def event_from_dict(obj, line=None) -> Event:
    """Validate one JSON event object. Unknown keys are ignored."""
    if not isinstance(obj, dict):
        raise SchemaError("event must be a JSON object", line=line)
    case_id = _require(obj, "case_id", line)
    if not isinstance(case_id, str) or not case_id:
        raise SchemaError("case_id must be a non-empty string", line=line, field="case_id")
    seq = _require(obj, "seq", line)
    if isinstance(seq, bool) or not isinstance(seq, int) or seq < 0:
        raise SchemaError("seq must be a non-negative integer", line=line, field="seq")
    activity = normalize_activity(str(_require(obj, "activity", line)))
    if not activity:
        raise SchemaError("activity must be non-empty", line=line, field="activity")
    external = _require(obj, "external_context", line)
    if not isinstance(external, str) or not external:
        raise SchemaError("external_context must be a non-empty string",
                          line=line, field="external_context")

    internal = _internal_context_from_obj(obj, line)

    lifecycle = obj.get("lifecycle", LIFECYCLE_STEP)
    if lifecycle not in (LIFECYCLE_STEP, LIFECYCLE_CASE_END):
        raise SchemaError("lifecycle must be 'step' or 'case_end'",
                          line=line, field="lifecycle")
    timestamp = obj.get("timestamp")
    if timestamp is not None and not isinstance(timestamp, str):
        raise SchemaError("timestamp must be an ISO-8601 string",
                          line=line, field="timestamp")
    return Event(case_id, seq, activity, internal, external, timestamp, lifecycle)


def _internal_context_from_obj(obj, line=None) -> InternalContext:
    dims: dict[str, set[str]] = {}
    dims["participants"] = set(_string_list(obj.get("participants", []), "participants", line))
    tool = obj.get("tool")
    if tool is not None and not isinstance(tool, str):
        raise SchemaError("'tool' must be a string", line=line, field="tool")
    dims["tool"] = {tool} if tool else set()
    dims["data"] = set(_string_list(obj.get("data", []), "data", line))
    attrs = obj.get("attrs", {})
    if not isinstance(attrs, dict):
        raise SchemaError("'attrs' must be an object", line=line, field="attrs")
    for k, v in attrs.items():
        if not k:
            raise SchemaError("attrs key is empty", line=line, field="attrs")
        dims[k] = {str(v)}
    return InternalContext.of(dims)


def step_from_dict(obj, line=None) -> TraceStep:
    """Parse one ongoing-trace step (activity + internal context) from a
    recommendation request payload."""
    if not isinstance(obj, dict):
        raise SchemaError("trace step must be a JSON object", line=line)
    activity = normalize_activity(str(_require(obj, "activity", line)))
    if not activity:
        raise SchemaError("activity must be non-empty", line=line, field="activity")
    return TraceStep(activity, _internal_context_from_obj(obj, line))


def event_to_dict(e: Event) -> dict:
    out = {
        "case_id": e.case_id,
        "seq": e.seq,
        "activity": e.activity,
        "external_context": e.external_context_id,
        "lifecycle": e.lifecycle,
    }
    extra_attrs = {}
    for name, vals in e.internal_context.dimensions:
        if name == "participants":
            out["participants"] = sorted(vals)
        elif name == "data":
            out["data"] = sorted(vals)
        elif name == "tool":
            if vals:
                out["tool"] = sorted(vals)[0]
        else:
            if vals:
                extra_attrs[name] = sorted(vals)[0]
    if extra_attrs:
        out["attrs"] = extra_attrs
    if e.timestamp is not None:
        out["timestamp"] = e.timestamp
    return out


class EventLog:
    """Append-only event store grouped by case, plus a context catalog.

    Appends are expected to be serialized by the caller (single writer);
    traces() returns an immutable snapshot view.
    """

    def __init__(self):
        self._cases: dict[str, list[Event]] = {}
        self._keys: set[tuple[str, int]] = set()
        self.context_catalog: dict[str, ExternalContext] = {}

    def __eq__(self, other):
        return isinstance(other, EventLog) and self._cases == other._cases

    def __len__(self):
        return len(self._keys)

    @property
    def case_ids(self) -> list[str]:
        return sorted(self._cases)

    def events(self) -> list[Event]:
        return [e for cid in sorted(self._cases) for e in self._cases[cid]]

    def register_context(self, ctx: ExternalContext) -> None:
        self.context_catalog[ctx.id] = ctx

    def get_context(self, context_id: str) -> ExternalContext:
        return self.context_catalog.get(context_id, ExternalContext.of(context_id))

    def append(self, e: Event) -> None:
        key = (e.case_id, e.seq)
        if key in self._keys:
            raise IntegrityError(
                f"duplicate event (case_id={e.case_id!r}, seq={e.seq})",
                case_id=e.case_id)
        existing = self._cases.get(e.case_id)
        if existing:
            last = existing[-1]
            if last.lifecycle == LIFECYCLE_CASE_END:
                raise OrderingError(
                    f"case {e.case_id!r} is already completed", case_id=e.case_id)
            if e.seq <= last.seq:
                raise OrderingError(
                    f"seq {e.seq} not greater than case maximum {last.seq} "
                    f"in case {e.case_id!r}", case_id=e.case_id)
            if e.external_context_id != last.external_context_id:
                # a mid-case context change must start a new case_id instead
                raise OrderingError(
                    f"external context change within case {e.case_id!r} "
                    f"({last.external_context_id!r} -> {e.external_context_id!r})",
                    case_id=e.case_id)
        self._cases.setdefault(e.case_id, []).append(e)
        self._keys.add(key)

    def append_all(self, events: list[Event]) -> None:
        """Append a batch atomically: on any error nothing is kept."""
        applied = []
        try:
            for e in events:
                self.append(e)
                applied.append(e)
        except Exception:
            for e in reversed(applied):
                self._cases[e.case_id].pop()
                if not self._cases[e.case_id]:
                    del self._cases[e.case_id]
                self._keys.discard((e.case_id, e.seq))
            raise

    def traces(self) -> list[Trace]:
        """One Trace per case, steps in seq order, ascending case_id."""
        out = []
        for cid in sorted(self._cases):
            events = self._cases[cid]
            status = (STATUS_COMPLETED
                      if events[-1].lifecycle == LIFECYCLE_CASE_END
                      else STATUS_ONGOING)
            out.append(Trace(
                case_id=cid,
                steps=[TraceStep(e.activity, e.internal_context) for e in events],
                external_context_id=events[0].external_context_id,
                status=status,
                started_at=events[0].timestamp,
                ended_at=events[-1].timestamp,
            ))
        return out

    def trace(self, case_id: str) -> Trace:
        from .errors import NotFoundError
        if case_id not in self._cases:
            raise NotFoundError(f"unknown case {case_id!r}", case_id=case_id)
        for t in self.traces():
            if t.case_id == case_id:
                return t
        raise AssertionError("unreachable")

    def serialize(self) -> str:
        """JSONL, sorted by (case_id, seq); parse_log round-trips it."""
        lines = [json.dumps(event_to_dict(e), sort_keys=True) for e in self.events()]
        return "\n".join(lines) + ("\n" if lines else "")

    def content_hash(self) -> str:
        import hashlib
        return hashlib.sha256(self.serialize().encode("utf-8")).hexdigest()


def parse_log(data: bytes | str) -> EventLog:
    """Parse JSONL content into a validated EventLog.

    Lines may arrive in any order; events are grouped per case and sorted
    by seq. Blank lines are skipped.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}")
    seen: dict[tuple[str, int], int] = {}
    events: list[Event] = []
    for line_no, line in enumerate(data.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON on line {line_no}: {exc.msg}", line=line_no)
        e = event_from_dict(obj, line=line_no)
        key = (e.case_id, e.seq)
        if key in seen:
            raise IntegrityError(
                f"duplicate event (case_id={e.case_id!r}, seq={e.seq}) on line "
                f"{line_no} (first seen on line {seen[key]})",
                line=line_no, case_id=e.case_id)
        seen[key] = line_no
        events.append(e)
    log = EventLog()
    events.sort(key=lambda e: (e.case_id, e.seq))
    for e in events:
        log.append(e)
    return log


def _parse_timestamp(value: str) -> datetime:
    ts = value.replace("Z", "+00:00")
    dt = datetime.fromisoformat(ts)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt


def evaluate_outcome(trace: Trace, predicate: SuccessPredicate) -> str:
    """Classify a trace: unknown while ongoing, success iff every clause holds."""
    if trace.status != STATUS_COMPLETED:
        return OUTCOME_UNKNOWN
    if not trace.steps:
        return OUTCOME_FAILURE
    names = trace.activities
    if predicate.terminal_activities is not None:
        if names[-1] not in predicate.terminal_activities:
            return OUTCOME_FAILURE
    if predicate.must_contain is not None:
        if not predicate.must_contain.issubset(names):
            return OUTCOME_FAILURE
    if predicate.max_length is not None:
        if len(names) > predicate.max_length:
            return OUTCOME_FAILURE
    if predicate.max_duration_seconds is not None:
        # without both endpoint timestamps the duration clause cannot hold
        if trace.started_at is None or trace.ended_at is None:
            return OUTCOME_FAILURE
        try:
            span = _parse_timestamp(trace.ended_at) - _parse_timestamp(trace.started_at)
        except ValueError:
            return OUTCOME_FAILURE
        if span.total_seconds() > predicate.max_duration_seconds:
            return OUTCOME_FAILURE
    return OUTCOME_SUCCESS


def load_context_catalog(obj) -> dict[str, ExternalContext]:
    """Read a context catalog mapping {"c1": {...attrs...}, ...}."""
    if not isinstance(obj, dict):
        raise SchemaError("context catalog must be an object mapping id -> attributes")
    out = {}
    for cid, attrs in obj.items():
        if not isinstance(attrs, dict):
            raise SchemaError(f"attributes of context {cid!r} must be an object")
        out[cid] = ExternalContext.of(cid, {str(k): str(v) for k, v in attrs.items()})
    return out

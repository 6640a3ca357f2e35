"""Activity pattern mining: closed frequent contiguous activity sequences.

A sequence is frequent in an external context when it occurs contiguously
in at least min_support distinct traces of that context; it is closed when
no strict contiguous super-sequence has equal support. Mined patterns
carry per-position context profiles aggregated over one occurrence (the
first) per supporting trace.

``mine_patterns`` uses occurrence-list expansion (prefix growth over
contiguous extensions, pruned by anti-monotonicity).
``brute_force_patterns`` is the exhaustive test oracle with the same
contract.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .errors import DomainError, ParseError, SchemaError, VersionError
from .event_log import (
    ExternalContext,
    OUTCOME_SUCCESS,
    Trace,
    evaluate_outcome,
)
from .preferences import Preferences

REPOSITORY_VERSION = 1

_BRUTE_FORCE_EVENT_GUARD = 10_000


@dataclass(frozen=True)
class ActivityTemplate:
    """One pattern position: activity name plus aggregated context profile.

    profile maps dimension -> ((value, occurrence_count), ...) sorted by
    count descending, then value ascending.
    """

    activity: str
    profile: tuple[tuple[str, tuple[tuple[str, int], ...]], ...] = ()

    def modal_values(self, dim: str) -> frozenset[str]:
        """Values tied at the dimension's maximum count."""
        for name, pairs in self.profile:
            if name == dim and pairs:
                top = pairs[0][1]
                return frozenset(v for v, c in pairs if c == top)
        return frozenset()

    def has_dimension(self, dim: str) -> bool:
        return any(name == dim and pairs for name, pairs in self.profile)

    def to_dict(self) -> dict:
        return {
            "activity": self.activity,
            "profile": {name: [[v, c] for v, c in pairs]
                        for name, pairs in self.profile},
        }

    @classmethod
    def from_dict(cls, obj) -> "ActivityTemplate":
        profile = tuple(
            (name, tuple((v, int(c)) for v, c in pairs))
            for name, pairs in sorted(obj.get("profile", {}).items())
        )
        return cls(obj["activity"], profile)


@dataclass(frozen=True)
class ActivityPattern:
    id: str
    external_context_id: str
    templates: tuple[ActivityTemplate, ...]
    support: int
    successful_support: int
    source_case_ids: tuple[str, ...]
    source_participants: tuple[tuple[str, tuple[str, ...]], ...] = ()
    closed: bool = True

    @property
    def activities(self) -> tuple[str, ...]:
        return tuple(t.activity for t in self.templates)

    def __len__(self):
        return len(self.templates)

    def participants_of(self, case_id: str) -> tuple[str, ...]:
        for cid, parts in self.source_participants:
            if cid == case_id:
                return parts
        return ()

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "context": self.external_context_id,
            "support": self.support,
            "successful_support": self.successful_support,
            "closed": self.closed,
            "templates": [t.to_dict() for t in self.templates],
            "sources": list(self.source_case_ids),
            "source_participants": {cid: list(p) for cid, p in self.source_participants},
        }

    @classmethod
    def from_dict(cls, obj) -> "ActivityPattern":
        return cls(
            id=obj["id"],
            external_context_id=obj["context"],
            templates=tuple(ActivityTemplate.from_dict(t) for t in obj["templates"]),
            support=int(obj["support"]),
            successful_support=int(obj["successful_support"]),
            source_case_ids=tuple(obj["sources"]),
            source_participants=tuple(
                (cid, tuple(p))
                for cid, p in sorted(obj.get("source_participants", {}).items())
            ),
            closed=bool(obj.get("closed", True)),
        )


def pattern_id(context_id: str, activities) -> str:
    payload = json.dumps([context_id, list(activities)], sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def _group_by_context(traces: list[Trace]) -> dict[str, list[Trace]]:
    out: dict[str, list[Trace]] = {}
    for t in sorted(traces, key=lambda t: t.case_id):
        out.setdefault(t.external_context_id, []).append(t)
    return out


def _trace_participants(trace: Trace) -> tuple[str, ...]:
    seen: set[str] = set()
    for step in trace.steps:
        seen |= step.context.values("participants")
    return tuple(sorted(seen))


def _build_pattern(context_id: str, seq: tuple[str, ...],
                   first_occurrence: dict[int, int], ctraces: list[Trace],
                   prefs: Preferences) -> ActivityPattern:
    """Aggregate one pattern from its first occurrence per supporting trace."""
    supporting = sorted(first_occurrence)
    profiles: list[dict[str, dict[str, int]]] = [dict() for _ in seq]
    for t in supporting:
        start = first_occurrence[t]
        for j in range(len(seq)):
            step = ctraces[t].steps[start + j]
            for dim, vals in step.context.dimensions:
                if not vals:
                    continue
                counts = profiles[j].setdefault(dim, {})
                for v in vals:
                    counts[v] = counts.get(v, 0) + 1
    templates = []
    for activity, counts_by_dim in zip(seq, profiles):
        profile = tuple(
            (dim, tuple(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))))
            for dim, counts in sorted(counts_by_dim.items())
        )
        templates.append(ActivityTemplate(activity, profile))
    outcomes = [evaluate_outcome(ctraces[t], prefs.success_predicate) for t in supporting]
    return ActivityPattern(
        id=pattern_id(context_id, seq),
        external_context_id=context_id,
        templates=tuple(templates),
        support=len(supporting),
        successful_support=sum(1 for o in outcomes if o == OUTCOME_SUCCESS),
        source_case_ids=tuple(ctraces[t].case_id for t in supporting),
        source_participants=tuple(sorted(
            (ctraces[t].case_id, _trace_participants(ctraces[t])) for t in supporting
        )),
    )


def _sorted_output(patterns: list[ActivityPattern]) -> list[ActivityPattern]:
    return sorted(patterns, key=lambda p: (-p.support, -len(p), p.id))


def mine_patterns(traces: list[Trace], prefs: Preferences) -> list[ActivityPattern]:
    """Closed frequent contiguous sequences per external context.

    Both ongoing and completed traces count toward support; success is
    evaluated per trace with the preferences' success predicate and only
    feeds successful_support.
    """
    out: list[ActivityPattern] = []
    for context_id, ctraces in _group_by_context(traces).items():
        out.extend(_mine_context(context_id, ctraces, prefs))
    return _sorted_output(out)


def _mine_context(context_id: str, ctraces: list[Trace],
                  prefs: Preferences) -> list[ActivityPattern]:
    names_by_trace = [t.activities for t in ctraces]
    frontier: dict[tuple[str, ...], list[tuple[int, int]]] = {}
    for t, names in enumerate(names_by_trace):
        for p, a in enumerate(names):
            frontier.setdefault((a,), []).append((t, p))

    frequent: dict[tuple[str, ...], list[tuple[int, int]]] = {}
    while frontier:
        next_frontier: dict[tuple[str, ...], list[tuple[int, int]]] = {}
        for seq, occs in frontier.items():
            if len({t for t, _ in occs}) < prefs.min_support:
                continue
            frequent[seq] = occs
            length = len(seq)
            for t, p in occs:
                names = names_by_trace[t]
                if p + length < len(names):
                    ext = seq + (names[p + length],)
                    next_frontier.setdefault(ext, []).append((t, p))
        frontier = next_frontier

    support = {seq: len({t for t, _ in occs}) for seq, occs in frequent.items()}
    not_closed: set[tuple[str, ...]] = set()
    for seq in frequent:
        if len(seq) < 2:
            continue
        for sub in (seq[:-1], seq[1:]):
            if support.get(sub) == support[seq]:
                not_closed.add(sub)

    patterns = []
    for seq, occs in frequent.items():
        if len(seq) < prefs.min_length or seq in not_closed:
            continue
        first: dict[int, int] = {}
        for t, p in occs:
            if t not in first or p < first[t]:
                first[t] = p
        patterns.append(_build_pattern(context_id, seq, first, ctraces, prefs))
    return patterns


def _contains_contiguous(haystack: tuple[str, ...], needle: tuple[str, ...]) -> bool:
    n, m = len(haystack), len(needle)
    return any(haystack[i:i + m] == needle for i in range(n - m + 1))


def brute_force_patterns(traces: list[Trace], prefs: Preferences) -> list[ActivityPattern]:
    """Exhaustive-enumeration oracle with the same contract as mine_patterns."""
    total = sum(len(t.steps) for t in traces)
    if total > _BRUTE_FORCE_EVENT_GUARD:
        raise DomainError(
            f"brute-force guard exceeded: {total} events > {_BRUTE_FORCE_EVENT_GUARD}")
    out: list[ActivityPattern] = []
    for context_id, ctraces in _group_by_context(traces).items():
        occ: dict[tuple[str, ...], dict[int, int]] = {}
        for t, trace in enumerate(ctraces):
            names = tuple(trace.activities)
            for i in range(len(names)):
                for j in range(i + 1, len(names) + 1):
                    d = occ.setdefault(names[i:j], {})
                    if t not in d:
                        d[t] = i
        support = {seq: len(d) for seq, d in occ.items()}
        for seq, first in occ.items():
            if support[seq] < prefs.min_support or len(seq) < prefs.min_length:
                continue
            closed = not any(
                len(other) > len(seq)
                and support[other] == support[seq]
                and _contains_contiguous(other, seq)
                for other in occ
            )
            if not closed:
                continue
            out.append(_build_pattern(context_id, seq, first, ctraces, prefs))
    return _sorted_output(out)


@dataclass
class PatternRepository:
    """Versioned store of mined patterns keyed by external context."""

    patterns: list[ActivityPattern] = field(default_factory=list)
    preferences: Preferences = field(default_factory=Preferences)
    contexts: dict[str, ExternalContext] = field(default_factory=dict)
    log_snapshot: str = ""
    mined_at: str | None = None

    def by_context(self, context_id: str) -> list[ActivityPattern]:
        return [p for p in self.patterns if p.external_context_id == context_id]

    def context_of(self, context_id: str) -> ExternalContext:
        return self.contexts.get(context_id, ExternalContext.of(context_id))

    def counts_by_context(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for p in self.patterns:
            out[p.external_context_id] = out.get(p.external_context_id, 0) + 1
        return out

    def to_dict(self) -> dict:
        return {
            "version": REPOSITORY_VERSION,
            "preferences": self.preferences.to_dict(),
            "contexts": {cid: dict(ctx.attributes)
                         for cid, ctx in sorted(self.contexts.items())},
            "log_snapshot": self.log_snapshot,
            "mined_at": self.mined_at,
            "patterns": [p.to_dict() for p in self.patterns],
        }

    @classmethod
    def from_dict(cls, obj) -> "PatternRepository":
        if not isinstance(obj, dict):
            raise SchemaError("repository must be a JSON object")
        version = obj.get("version")
        if version != REPOSITORY_VERSION:
            raise VersionError(
                f"unsupported repository version {version!r} "
                f"(expected {REPOSITORY_VERSION})")
        return cls(
            patterns=[ActivityPattern.from_dict(p) for p in obj.get("patterns", [])],
            preferences=Preferences.from_dict(obj.get("preferences")),
            contexts={cid: ExternalContext.of(cid, attrs)
                      for cid, attrs in obj.get("contexts", {}).items()},
            log_snapshot=obj.get("log_snapshot", ""),
            mined_at=obj.get("mined_at"),
        )


def repository_json(repo: PatternRepository) -> str:
    """Canonical serialization; byte-identical for identical content."""
    return json.dumps(repo.to_dict(), sort_keys=True, indent=2) + "\n"


def save_repository(repo: PatternRepository, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(repository_json(repo))


def load_repository(path) -> PatternRepository:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"repository file is not valid JSON: {exc.msg}")
    return PatternRepository.from_dict(obj)


def mine_repository(log, prefs: Preferences,
                    contexts: dict[str, ExternalContext] | None = None) -> PatternRepository:
    """Mine a full repository from an event log snapshot.

    mined_at records the latest event timestamp of the snapshot (not wall
    clock) so re-mining the same snapshot is byte-identical.
    """
    traces = log.traces()
    stamps = [e.timestamp for e in log.events() if e.timestamp is not None]
    return PatternRepository(
        patterns=mine_patterns(traces, prefs),
        preferences=prefs,
        contexts=dict(contexts if contexts is not None else log.context_catalog),
        log_snapshot=log.content_hash(),
        mined_at=max(stamps) if stamps else None,
    )
